"""Arithmetic admissibility and nonexistence checkers for design parameters.

Every verdict carries the certificate numbers it was computed from, so each
condition can be re-checked by hand from the report alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from sympy import factorint, n_order

from .groups import AbelianGroup, element_order, radical


@dataclass
class Condition:
    name: str
    passed: bool
    certificate: dict

    def render(self) -> str:
        cert = ", ".join(f"{k}={v}" for k, v in self.certificate.items())
        return f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({cert})"


@dataclass
class ParamVerdict:
    params: dict
    conditions: list[Condition] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.conditions)

    def render(self) -> str:
        lines = [c.render() for c in self.conditions]
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


def is_prime_power(k: int) -> bool:
    return k >= 2 and len(factorint(k)) == 1

def is_singly_even(k: int) -> bool:
    return k % 4 == 2


def trivial_additive(k: int) -> bool:
    """Whether the one-block design on k points admits a zero-sum group."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return k % 4 != 2


def strict_additive_necessary(v: int, k: int) -> ParamVerdict:
    """Necessary conditions for a strictly additive 2-(v,k,1) design."""
    if not v >= k >= 2:
        raise ValueError(f"need v >= k >= 2, got v={v}, k={k}")
    rad_v = radical(v)
    verdict = ParamVerdict({"v": v, "k": k})
    verdict.conditions.append(
        Condition("radical(v) divides k", k % rad_v == 0, {"rad(v)": rad_v, "k": k})
    )
    verdict.conditions.append(
        Condition("v not singly even", not is_singly_even(v), {"v mod 4": v % 4})
    )
    return verdict


def super_regular_necessary(
    v: int, k: int, group: Optional[AbelianGroup] = None
) -> ParamVerdict:
    """Necessary conditions for a super-regular 2-(v,k,1) design."""
    verdict = ParamVerdict({"v": v, "k": k})
    mod = k * (k - 1)
    verdict.conditions.append(
        Condition(
            "v = k (mod k(k-1))", v % mod == k % mod, {"v mod k(k-1)": v % mod, "k": k}
        )
    )
    rv, rk = radical(v), radical(k)
    verdict.conditions.append(
        Condition("radical(v) = radical(k)", rv == rk, {"rad(v)": rv, "rad(k)": rk})
    )
    verdict.conditions.append(
        Condition("k not singly even", not is_singly_even(k), {"k mod 4": k % 4})
    )
    if group is not None:
        bad = [g for g in group.elements() if k % element_order(group, g) != 0]
        verdict.conditions.append(
            Condition(
                "element orders divide k",
                not bad,
                {"group": group.cyclic_orders, "violations": len(bad)},
            )
        )
    return verdict


def theorem41_42(v: int, k: int) -> ParamVerdict:
    """Mod-3 nonexistence test for v/k when 3 | k but 9 does not divide k.

    The k-hypothesis is implemented as k = +-3 (mod 9).  Reports a verdict
    "nonexistent" when the hypothesis holds and v/k = 2 (mod 3); when the
    hypothesis fails, the residue is still reported for diagnosis.
    """
    if v % k != 0:
        raise ValueError(f"k={k} must divide v={v}")
    hyp = k % 3 == 0 and k % 9 != 0
    ratio = v // k
    residue = ratio % 3
    verdict = ParamVerdict({"v": v, "k": k})
    verdict.conditions.append(
        Condition("k = +-3 (mod 9)", hyp, {"k mod 9": k % 9})
    )
    verdict.conditions.append(
        Condition("v/k != 2 (mod 3)", residue != 2, {"v/k mod 3": residue})
    )
    if hyp and residue == 2:
        verdict.notes.append("nonexistent: v/k = 2 (mod 3) with k = +-3 (mod 9)")
    return verdict


@dataclass
class OrderEnumeration:
    n: int
    k: int
    order_of_two: int
    i_max: int
    admissible_v: list[int]


def theorem43_enumerate(n: int) -> OrderEnumeration:
    """Admissible point counts for block size k = 2^n * 3.

    v must equal 2^(o*i+n)*3 with o the multiplicative order of 2 mod k-1
    and 0 <= i <= floor((n^2-n)/o); when o > n^2-n only the trivial v = k
    survives.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = 2**n * 3
    o = int(n_order(2, k - 1))
    i_max = (n * n - n) // o
    vs = [2 ** (o * i + n) * 3 for i in range(i_max + 1)]
    return OrderEnumeration(n, k, o, i_max, vs)


def main_status(k: int) -> str:
    """Classify a block size: which route (if any) reaches a design.

    Returns one of "prime_power", "singly_even", "two_pow_times_three",
    "constructible".
    """
    if k < 3:
        raise ValueError(f"k must be >= 3, got {k}")
    if is_prime_power(k):
        return "prime_power"
    if is_singly_even(k):
        return "singly_even"
    fac = factorint(k)
    if set(fac) == {2, 3} and fac[3] == 1:
        return "two_pow_times_three"
    return "constructible"


def largest_odd_prime_power_factor(k: int) -> tuple[int, int]:
    """(q, r) with q the largest odd prime power dividing k exactly, r = k/q."""
    fac = factorint(k)
    q = max((p**e for p, e in fac.items() if p != 2), default=1)
    return q, k // q
