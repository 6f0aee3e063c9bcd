"""Two ways to grow a small design into a bigger one.

First the field-extension route: the six-block family over Z_5 x GF(25)
is multiplied through coset representatives of GF(625)* to give a family
over Z_5 x GF(625), whose development is a 2-(3125,5,1) design.  Then the
subspace-replacement route: the 125-point design is planted inside the
affine space AG(4,5), replacing the lines of a coordinate subspace, and
the anomaly travels with it.
"""

from difam.catalog import thm62_z5
from difam.designs import (
    Design,
    anomaly_witness,
    develop,
    subspace_replace,
    verify_design,
    verify_super_regular,
)
from difam.groups import AbelianGroup
from difam.lifting import extend_field


def main():
    rdf = thm62_z5()
    print(f"base family: {rdf.s} blocks over Z_5 x GF(25)")

    big = extend_field(rdf, 2)
    print(f"extended family: {big.s} blocks over Z_5 x GF(625)")
    design = develop(big)
    dv = verify_design(design)
    sr = verify_super_regular(design, design.carrier)
    print(
        f"  developed: 2-({design.v},{design.k},{dv.lambda_found}), "
        f"{design.b} blocks, super-regular: {sr.is_super_regular}"
    )

    small = develop(rdf)
    flat = Design(AbelianGroup((5, 5, 5)), small.blocks, 5)
    planted = subspace_replace(4, 3, 5, flat)
    pv = verify_design(planted)
    witness = anomaly_witness(planted, 5)
    print(
        f"\nsubspace replacement inside AG(4,5): 2-({planted.v},{planted.k},{pv.lambda_found}), "
        f"anomalous: {witness.anomalous} (closure {witness.closure_size})"
    )


if __name__ == "__main__":
    main()
