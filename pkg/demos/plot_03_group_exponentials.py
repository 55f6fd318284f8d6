"""
Group exponentials and contraction maps
=======================================

A group exponential sends each chain point to a negative group element.
It is strong when the image of a class lies in a strictly larger class.
Each exponential induces a contraction, and strength matches centripetality.
"""

from hahnexp import generators
from hahnexp.exp_structure import (
    LEMMA_CONSISTENT,
    PAPER_LITERAL,
    InducedContraction,
    check_centripetal,
    check_round_trip,
    check_strong,
)

rng = generators.make_rng(1)

for kind in ("strong", "violating"):
    inst = generators.make_instance(rng, kind, samples=10)
    strong = check_strong(inst.h, inst.strong_samples)
    chi = InducedContraction(inst.h)
    cent = check_centripetal(chi, inst.centripetal_samples, LEMMA_CONSISTENT)
    print(f"{kind:9s} strong={strong.ok} centripetal={cent.ok}")
    if strong.failures:
        print("  witness:", strong.failures[0])

# the reversed inequality fails even on strong exponentials
inst = generators.make_instance(rng, "strong", samples=5)
literal = check_centripetal(InducedContraction(inst.h), inst.centripetal_samples, PAPER_LITERAL)
print("reversed inequality holds:", literal.ok)
print("note:", literal.notes[0])

# reading the exponential back off its contraction recovers it
print("round trip:", check_round_trip(inst.h, inst.strong_samples).ok)
