#!/usr/bin/env python3
"""Print small coefficient tables for a few representative families."""

from fractions import Fraction

from polygenocchi import (
    CLASSICAL_POINT,
    FamilySpec,
    ParamPoint,
    family_series,
)

SHOWCASE = [
    (FamilySpec("classical-genocchi"), CLASSICAL_POINT),
    (FamilySpec("type1", k=2, alpha=1), CLASSICAL_POINT),
    (FamilySpec("type2", k=2, alpha=1), CLASSICAL_POINT),
    (
        FamilySpec("type1", k=-1, alpha=2),
        ParamPoint(Fraction(2), Fraction(1, 2), Fraction(1, 3), Fraction(2)),
    ),
    (FamilySpec("apostol-bernoulli-higher", alpha=1), CLASSICAL_POINT),
    (FamilySpec("frobenius-higher", alpha=1, mu=Fraction(-1)), CLASSICAL_POINT),
]


def main() -> None:
    for spec, point in SHOWCASE:
        expansion = family_series(spec, point, 6)
        label = spec.tag
        if spec.k is not None:
            label += f" k={spec.k}"
        label += f" alpha={spec.alpha}"
        if spec.mu is not None:
            label += f" mu={spec.mu}"
        print(f"== {label} at lam={point.lam}, ln a={point.ln_a}, "
              f"ln b={point.ln_b}, ln c={point.ln_c} ==")
        for n, poly in enumerate(expansion.polys):
            coeffs = [str(poly.coefficient(d))
                      for d in range(max(poly.degree, 0) + 1)]
            print(f"  P_{n}: [{', '.join(coeffs)}]")
        print()


if __name__ == "__main__":
    main()
