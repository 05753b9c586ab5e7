"""Character Hodge structures, half twists and signatures."""

from eigenperiod.dm import parse_weights
from eigenperiod.hodge import (
    CharacterHodgeStructure,
    arrangement_eigendims,
    canonical_sigma,
    domain_classifier,
    half_twist,
    sylvester_signature,
    validate_chs,
)

# weight 1 structure of the curve y^3 = x^4 - 1 (genus 3)
H = CharacterHodgeStructure(1, 3, {(1, 1): 2, (1, 0): 1, (2, 1): 1, (2, 0): 2})
print("valid:", validate_chs(H)[0], "hodge numbers", H.hodge_numbers())

T = half_twist(H, canonical_sigma(3))
print("half twist:", T.to_json())

# the K3 lattice from its Hodge diamond
print("K3 signature:", sylvester_signature(22, [1, 20, 1]))

# eigenspace of twelve points with weight 1/6 each
mu = parse_weights("1/6x12")
dims = arrangement_eigendims(mu, 1)
print("eigendims for 1/6 x 12:", dims)
print(domain_classifier([(False, *dims.numbers)]).as_dict())
