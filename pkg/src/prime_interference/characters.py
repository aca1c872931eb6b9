"""Exact Dirichlet characters with Conrey labels.

Character values are kept as exact turns (a ``Fraction`` k/m standing for
e^{2 pi i k/m}), so multiplicativity and conjugation are checked without
tolerances. Floats appear only through :meth:`UnitValue.to_complex`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

__all__ = [
    "UnitValue",
    "ZERO",
    "ONE",
    "DirichletCharacter",
    "ImprimitiveCharacterError",
    "character",
    "parse_character_id",
    "enumerate_characters",
    "evaluate",
    "conjugate",
    "parity",
    "gauss_sum",
    "is_primitive",
    "euler_phi",
    "factorize",
]

MAX_MODULUS = 10**6
MAX_TABLE_MODULUS = 10**4


class ImprimitiveCharacterError(ValueError):
    """Raised where a primitive character is required."""


@dataclass(frozen=True)
class UnitValue:
    """A root of unity e^{2 pi i turn}, or the zero value when ``turn`` is None."""

    turn: Fraction | None

    def __post_init__(self):
        if self.turn is not None:
            t = Fraction(self.turn) % 1
            object.__setattr__(self, "turn", t)

    @property
    def is_zero(self) -> bool:
        return self.turn is None

    def __mul__(self, other: UnitValue) -> UnitValue:
        if self.turn is None or other.turn is None:
            return ZERO
        return UnitValue(self.turn + other.turn)

    def __pow__(self, k: int) -> UnitValue:
        if self.turn is None:
            return ZERO if k > 0 else ONE
        return UnitValue(self.turn * k)

    def conjugate(self) -> UnitValue:
        return self if self.turn is None else UnitValue(-self.turn)

    def order(self) -> int:
        if self.turn is None:
            raise ValueError("zero has no multiplicative order")
        return self.turn.denominator

    def to_complex(self) -> complex:
        if self.turn is None:
            return 0j
        t = self.turn
        # exact on the axes so real characters stay exactly real
        if t.denominator <= 4 and (4 * t).denominator == 1:
            return (1 + 0j, 1j, -1 + 0j, -1j)[int(4 * t)]
        return cmath.exp(2j * math.pi * t.numerator / t.denominator)

    @property
    def real(self) -> float:
        return self.to_complex().real

    @property
    def imag(self) -> float:
        return self.to_complex().imag

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        return "UnitValue(0)" if self.turn is None else f"UnitValue({self.turn})"


ZERO = UnitValue(None)
ONE = UnitValue(Fraction(0))


# --- elementary arithmetic -------------------------------------------------


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation by trial division, as ((p, e), ...) ascending."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r -= r // p
    return r


def _primitive_root_prime_power(p: int, e: int) -> int:
    """Smallest primitive root mod p that also generates (Z/p^e)^x (p odd)."""
    ps = [r for r, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in ps):
            if e == 1 or pow(g, p - 1, p * p) != 1:
                return g
    raise ArithmeticError(f"no primitive root mod {p}")  # unreachable for primes


@lru_cache(maxsize=256)
def _dlog_table(p: int, e: int) -> tuple[int, dict[int, int]]:
    """Generator and discrete-log table for an odd prime power."""
    pe = p**e
    g = _primitive_root_prime_power(p, e)
    table = {}
    x = 1
    for k in range(pe - pe // p):
        table[x] = k
        x = x * g % pe
    return g, table


@lru_cache(maxsize=64)
def _dlog_table_two(e: int) -> dict[int, tuple[int, int]]:
    """For 2^e (e >= 3): n -> (eps, a) with n = (-1)^eps * 5^a mod 2^e."""
    m = 2**e
    table = {}
    x = 1
    for a in range(m // 4):
        table[x] = (0, a)
        table[(-x) % m] = (1, a)
        x = x * 5 % m
    return table


def _local_turn(p: int, e: int, label: int, n: int) -> Fraction:
    """Conrey local factor chi_{p^e}(label, n) as a turn; both coprime to p."""
    pe = p**e
    label %= pe
    n %= pe
    if p != 2:
        _, logs = _dlog_table(p, e)
        return Fraction(logs[label] * logs[n], pe - pe // p)
    if e == 1:
        return Fraction(0)
    if e == 2:
        return Fraction(int(label == 3) * int(n == 3), 2)
    logs = _dlog_table_two(e)
    eps_l, a_l = logs[label]
    eps_n, a_n = logs[n]
    return Fraction(eps_l * eps_n, 2) + Fraction(a_l * a_n, 2 ** (e - 2))


# --- the character type ----------------------------------------------------


@dataclass(frozen=True)
class DirichletCharacter:
    """Dirichlet character with Conrey label ``label`` modulo ``modulus``.

    Values are computed from discrete logarithms on demand; ``value_table``
    materialises the full table and is only allowed for small moduli.
    """

    modulus: int
    label: int
    _factors: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        q, n = self.modulus, self.label
        if not isinstance(q, int) or q < 1 or q > MAX_MODULUS:
            raise ValueError(f"modulus must be an integer in [1, {MAX_MODULUS}], got {q!r}")
        n %= q
        if q == 1:
            n = 1
        if math.gcd(n, q) != 1:
            raise ValueError(f"Conrey label {self.label} is not coprime to {q}")
        object.__setattr__(self, "label", n)
        object.__setattr__(self, "_factors", factorize(q))

    @property
    def id(self) -> str:
        return f"{self.modulus}.{self.label}"

    def __str__(self) -> str:
        return self.id

    def __call__(self, n: int) -> UnitValue:
        return evaluate(self, n)

    def value(self, n: int) -> UnitValue:
        q = self.modulus
        n %= q
        if math.gcd(n, q) != 1:
            return ZERO
        turn = Fraction(0)
        for p, e in self._factors:
            turn += _local_turn(p, e, self.label, n)
        return UnitValue(turn)

    @cached_property
    def value_table(self) -> dict[int, UnitValue]:
        if self.modulus > MAX_TABLE_MODULUS:
            raise ValueError(f"value tables are only materialised for q <= {MAX_TABLE_MODULUS}")
        q = self.modulus
        return {r: self.value(r) for r in range(1, max(q, 2)) if math.gcd(r, q) == 1}

    @property
    def is_principal(self) -> bool:
        return self.label == 1

    @property
    def is_real(self) -> bool:
        return self.label * self.label % self.modulus == 1 % self.modulus

    @property
    def parity(self) -> int:
        return parity(self)

    def conjugate(self) -> DirichletCharacter:
        return conjugate(self)

    @cached_property
    def order(self) -> int:
        q = self.modulus
        k = 1
        x = self.label % q
        while x != 1 % q:
            x = x * self.label % q
            k += 1
        return k

    @cached_property
    def conductor(self) -> int:
        """Smallest d | q such that the character is trivial on n = 1 (mod d)."""
        q = self.modulus
        d = q
        # shrink one prime at a time; primitivity is local at each prime
        for p, _ in self._factors:
            while d % p == 0 and _trivial_on_kernel(self, d // p):
                d //= p
        return d

    @property
    def is_primitive(self) -> bool:
        return is_primitive(self)

    def primitive_inducer(self) -> DirichletCharacter:
        """The primitive character modulo the conductor that induces this one."""
        f = self.conductor
        cand = DirichletCharacter(f, self.label % f if f > 1 else 1)
        q = self.modulus
        probe = (r for r in range(1, min(q, 2000)) if math.gcd(r, q) == 1)
        if all(cand.value(r) == self.value(r) for r in probe):
            return cand
        for c in enumerate_characters(f):  # pragma: no cover - Conrey labels are compatible
            if all(c.value(r) == self.value(r) for r in range(1, q) if math.gcd(r, q) == 1):
                return c
        raise ArithmeticError(f"no inducing character found for {self.id}")


def _trivial_on_kernel(chi: DirichletCharacter, d: int) -> bool:
    """Is chi identically 1 on {n coprime to q : n = 1 mod d}?"""
    q = chi.modulus
    if d == q:
        return True
    # the kernel subgroup is generated by small elements; checking 1 + k d for
    # all k < q/d covers it exactly
    for k in range(1, q // d):
        n = 1 + k * d
        if math.gcd(n, q) == 1 and chi.value(n).turn != 0:
            return False
    return True


def character(q: int, label: int) -> DirichletCharacter:
    return DirichletCharacter(q, label)


def parse_character_id(text: str) -> DirichletCharacter:
    """Parse the "q.label" identifier, e.g. "5.2"."""
    try:
        q_s, n_s = text.strip().split(".")
        return DirichletCharacter(int(q_s), int(n_s))
    except ValueError as exc:
        raise ValueError(f"bad character id {text!r}: expected 'q.label'") from exc


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, principal first, by Conrey label."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1:
        return [DirichletCharacter(1, 1)]
    return [DirichletCharacter(q, n) for n in range(1, q) if math.gcd(n, q) == 1]


def evaluate(chi: DirichletCharacter, n: int) -> UnitValue:
    if chi.modulus <= MAX_TABLE_MODULUS:
        q = chi.modulus
        r = n % q
        if q == 1:
            return ONE
        return chi.value_table.get(r, ZERO)
    return chi.value(n)


def conjugate(chi: DirichletCharacter) -> DirichletCharacter:
    q = chi.modulus
    if q == 1:
        return chi
    return DirichletCharacter(q, pow(chi.label, -1, q))


def parity(chi: DirichletCharacter) -> int:
    """0 for even characters, 1 for odd ones."""
    return 0 if chi.value(-1).turn == 0 else 1


def gauss_sum(chi: DirichletCharacter) -> complex:
    if not is_primitive(chi):
        raise ImprimitiveCharacterError(f"Gauss sum requested for imprimitive character {chi.id}")
    q = chi.modulus
    total = 0j
    for a in range(1, q + 1):
        v = chi.value(a)
        if not v.is_zero:
            total += v.to_complex() * cmath.exp(2j * math.pi * a / q)
    return total


def is_primitive(chi: DirichletCharacter) -> bool:
    q = chi.modulus
    return all(not _trivial_on_kernel(chi, q // p) for p, _ in chi._factors)
