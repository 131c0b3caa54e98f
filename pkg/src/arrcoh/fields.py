"""Exact scalar backends: rationals, prime fields, and a formal function field.

Every arrangement carries one backend object; scalars are stored raw
(`Fraction`, `int` residue, or sympy ``FracElement``) and all arithmetic is
routed through the backend so the three kinds share one interface.

Canonical forms: reduced fraction with positive denominator (automatic for
`Fraction`), residue in [0, p), and the canonical form of sympy's fraction
field.  `unit_factors` decomposes a nonzero scalar into canonical
multiplicative atoms (sign, rational primes, irreducible polynomials); the
symbol calculus in :mod:`arrcoh.symbols` is built on these atoms.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy import factorint


class ZeroUnit(ValueError):
    """A field unit was required but 0 was supplied."""


def _check_prime(p: int) -> int:
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    return p


class Rationals:
    """Arbitrary-precision rational numbers via `fractions.Fraction`."""

    kind = "q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def descriptor(self) -> str:
        return "q"

    def parse(self, s: str) -> Fraction:
        return Fraction(str(s))

    def to_str(self, v) -> str:
        return str(v)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero scalar")
        return a / b

    def neg(self, a):
        return -a

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return a == 0

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def unit_factors(self, a):
        """Canonical factorization of a unit: list of (atom, exponent).

        Atoms are Fraction(-1) and positive rational primes; the atom list is
        sorted by `atom_sort_key` and exponents are nonzero.
        """
        if a == 0:
            raise ZeroUnit("0 is not a unit")
        factors = {}
        if a < 0:
            factors[Fraction(-1)] = 1
        num, den = abs(a.numerator), a.denominator
        for p, e in factorint(num).items():
            factors[Fraction(p)] = factors.get(Fraction(p), 0) + e
        for p, e in factorint(den).items():
            factors[Fraction(p)] = factors.get(Fraction(p), 0) - e
        items = [(atom, e) for atom, e in factors.items() if e != 0]
        items.sort(key=lambda t: self.atom_sort_key(t[0]))
        return items

    def atom_sort_key(self, atom):
        return (0, 0) if atom == -1 else (1, atom)

    def atom_concrete(self, atom) -> bool:
        return True

    def random_unit(self, rng, small=False):
        nums = [1, -1, 2, 3, -2, 5, -3] if small else [1, -1, 2, 3, 5, -2, 7, -5, 4]
        dens = [1, 1, 1, 2, 3] if small else [1, 1, 2, 3, 5]
        return Fraction(rng.choice(nums), rng.choice(dens))


class PrimeField:
    """Residues modulo a prime p, stored as ints in [0, p)."""

    kind = "fp"

    def __init__(self, p: int):
        self.p = _check_prime(p)
        self.zero = 0
        self.one = 1 % p

    def descriptor(self) -> str:
        return f"fp:{self.p}"

    def parse(self, s: str):
        s = str(s)
        if "/" in s:
            num, den = s.split("/", 1)
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(s) % self.p

    def to_str(self, v) -> str:
        return str(v % self.p)

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero scalar")
        return (a * pow(b, -1, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def eq(self, a, b) -> bool:
        return (a - b) % self.p == 0

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def sort_key(self, a):
        return a % self.p

    def unit_factors(self, a):
        a %= self.p
        if a == 0:
            raise ZeroUnit("0 is not a unit")
        if a == 1:
            return []
        return [(a, 1)]

    def atom_sort_key(self, atom):
        return atom % self.p

    def atom_concrete(self, atom) -> bool:
        return True

    def random_unit(self, rng, small=False):
        return rng.randrange(1, self.p)


class FormalField:
    """Rational function field Q(a1, ..., ak) over a formal symbol alphabet.

    Backed by sympy's fraction field, which keeps elements in a unique
    canonical form, so equality stays decidable at the scalar level.
    """

    kind = "formal"

    def __init__(self, names):
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("formal backend needs distinct symbol names")
        self.names = names
        self.symbols = tuple(sympy.symbols(names))
        self.field = sympy.QQ.frac_field(*self.symbols)
        self.zero = self.field.zero
        self.one = self.field.one
        self._locals = dict(zip(names, self.symbols))

    def descriptor(self) -> str:
        return "formal:" + ",".join(self.names)

    def parse(self, s: str):
        expr = sympy.sympify(str(s), locals=self._locals, rational=True)
        return self.field.from_sympy(expr)

    def to_str(self, v) -> str:
        return str(self.field.to_sympy(v))

    def from_int(self, n: int):
        return self.field.convert(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero scalar")
        return a / b

    def neg(self, a):
        return -a

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return not a

    def sort_key(self, a):
        return str(self.field.to_sympy(a))

    def unit_factors(self, a):
        """Atoms: Fraction(-1), rational primes, and primitive irreducible polys.

        Polynomial atoms are stored as canonical FracElements (integer
        primitive, positive leading coefficient); their rational content is
        folded into the sign/prime part.  Splitting a unit into these atoms is
        multiplicative, which is what the degree-one symbol law needs.
        """
        if not a:
            raise ZeroUnit("0 is not a unit")
        expr = self.field.to_sympy(a)
        num, den = sympy.fraction(sympy.together(expr))
        rat = Fraction(1)
        poly_factors = {}
        for part, sign in ((num, 1), (den, -1)):
            coeff, factors = sympy.factor_list(part)
            rat *= Fraction(sympy.Rational(coeff)) ** sign
            for f, e in factors:
                poly = sympy.Poly(f, *self.symbols)
                content, prim = poly.primitive()
                if prim.LC() < 0:
                    prim = -prim
                    content = -content
                rat *= Fraction(sympy.Rational(content)) ** (e * sign)
                atom = self.field.from_sympy(prim.as_expr())
                poly_factors[atom] = poly_factors.get(atom, 0) + e * sign
        items = []
        if rat != 1:
            q_backend = Rationals()
            for atom, e in q_backend.unit_factors(rat):
                items.append((self.field.convert(sympy.Rational(atom)), e))
        items.extend((atom, e) for atom, e in poly_factors.items() if e != 0)
        items.sort(key=self.atom_sort_key)
        return items

    def atom_sort_key(self, atom):
        if isinstance(atom, tuple):
            atom = atom[0]
        expr = self.field.to_sympy(atom)
        if expr.is_Rational:
            q = Fraction(int(expr.p), int(expr.q))
            return (0, 0, "") if q == -1 else (1, q, "")
        return (2, 0, str(expr))

    def atom_concrete(self, atom) -> bool:
        # Steinberg detection stays off for genuinely formal factors
        return self.field.to_sympy(atom).is_Rational

    def random_unit(self, rng, small=False):
        sym = rng.choice(self.symbols)
        n = rng.choice([1, -1, 2])
        e = rng.choice([1, 1, -1])
        return self.from_int(n) * self.field.from_sympy(sym) ** e


def backend_from_descriptor(desc: str):
    """Build a backend from its descriptor string: q | fp:<p> | formal:<names>."""
    desc = desc.strip()
    if desc == "q":
        return Rationals()
    if desc.startswith("fp:"):
        return PrimeField(int(desc[3:]))
    if desc.startswith("formal:"):
        names = [n.strip() for n in desc[len("formal:"):].split(",") if n.strip()]
        return FormalField(names)
    raise ValueError(f"unknown field descriptor: {desc!r}")
