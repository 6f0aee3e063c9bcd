"""What the arithmetic alone says about 2-(v,k,1) design parameters.

Runs the necessary-condition checkers over the constructed examples, the
six problematic parameter pairs, and the power-of-two block sizes whose
admissible orders collapse to a single value.
"""

from difam.catalog import section4_table
from difam.params import (
    main_status,
    strict_additive_necessary,
    super_regular_necessary,
    theorem41_42,
    theorem43_enumerate,
)


def main():
    print("necessary conditions at the constructed parameter pairs:")
    for v, k in ((125, 5), (343, 7), (3125, 5), (234375, 15)):
        sr = super_regular_necessary(v, k)
        st = strict_additive_necessary(v, k)
        print(f"  v={v}, k={k}: super-regular {sr.all_pass}, strictly additive {st.all_pass}")

    print("\nthe six divisibility-admissible but problematic pairs:")
    for v, k in section4_table():
        verdict = theorem41_42(v, k)
        residue = verdict.conditions[1].certificate["v/k mod 3"]
        note = verdict.notes[0] if verdict.notes else f"mod-3 rule silent (v/k = {residue} mod 3)"
        print(f"  v={v}, k={k}: {note}")

    print("\nblock sizes k = 3*2^n and their admissible orders:")
    for n in range(1, 7):
        out = theorem43_enumerate(n)
        print(
            f"  n={n}: k={out.k}, order of 2 mod {out.k - 1} is {out.order_of_two}, "
            f"admissible v: {out.admissible_v}"
        )

    print("\nhow a handful of block sizes are classified:")
    for k in (5, 10, 12, 15, 45, 105):
        print(f"  k={k}: {main_status(k)}")


if __name__ == "__main__":
    main()
