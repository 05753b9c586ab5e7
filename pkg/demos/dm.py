"""Weight systems: integrality conditions, enumeration, stability and genus."""

import time

from eigenperiod.dm import (
    ball_dimension,
    cyclic_cover_genus,
    enumerate_weights,
    failing_pairs,
    git_classify,
    is_int,
    is_sigma_int,
    parse_weights,
)

for text in ["1/6x12", "2/5x5", "1/3x6", "1/4x8", "3/10x5, 1/2"]:
    mu = parse_weights(text)
    print(f"{text:12} INT={is_int(mu)!s:5} SigmaINT={is_sigma_int(mu)!s:5} "
          f"failing={[(str(a), str(b)) for a, b in failing_pairs(mu)][:2]}")

t = time.time()
for m in (5, 6, 7, 8):
    print(f"m={m}: INT {len(enumerate_weights(m, 'INT', 60))}, "
          f"SigmaINT {len(enumerate_weights(m, 'SigmaINT', 60))}")
print(f"enumeration took {time.time() - t:.1f}s")

# GIT: eight points of weight 1, coincidences given as groups
print(git_classify([1] * 8, [[0, 1, 2, 3], [4], [5], [6], [7]]).as_dict())
print(git_classify([1] * 8, [[0, 1, 2, 3, 4], [5], [6], [7]]).as_dict())

print("genus of y^6 = prod of 12 linear factors:", cyclic_cover_genus(6, [1] * 12))
print("ball dimension for 12 points:", ball_dimension(12))
