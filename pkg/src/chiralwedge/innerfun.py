"""Inner symmetric functions of the upper half-plane.

A spec describes a finite product

    phi(p) = sign * exp(i*kappa*p) * exp(-i*nu/p) * prod_z (p - z)/(p - conj(z))

with kappa, nu >= 0 and Blaschke zeros z in the open upper half-plane whose
multiset is closed under z -> -conj(z).  The boundary value on the real
line is then unimodular and satisfies phi(-p) = conj(phi(p)), which is the
property all downstream twist constructions rely on.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ValidationError
from .report import CheckReport
from .serialize import complex_pairs, doc_hash, dump_doc, from_complex_pairs, load_doc

PAIRING_TOL = 1e-10


def _check_zero_pairing(zeros, tol=PAIRING_TOL):
    """Greedy matching of the zero multiset against its image under z -> -conj(z)."""
    pool = list(zeros)
    while pool:
        z = pool.pop()
        mirror = -np.conj(z)
        if abs(z - mirror) <= tol:
            continue
        best = None
        for i, w in enumerate(pool):
            if abs(w - mirror) <= tol and (best is None or abs(w - mirror) < abs(pool[best] - mirror)):
                best = i
        if best is None:
            raise ValidationError(
                f"zero {z} has no partner at -conj(z)={mirror} within {tol}"
            )
        pool.pop(best)


@dataclass(frozen=True)
class InnerFunctionSpec:
    """Symbolic description of an inner symmetric function."""

    blaschke_zeros: tuple = ()
    translation_mass: float = 0.0  # kappa
    singular_mass: float = 0.0  # nu
    sign: int = 1
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "blaschke_zeros", tuple(complex(z) for z in self.blaschke_zeros))
        if not self.validate:
            return
        if self.sign not in (1, -1):
            raise ValidationError(f"sign must be +1 or -1, got {self.sign}")
        if self.translation_mass < 0:
            raise ValidationError("translation mass kappa must be >= 0")
        if self.singular_mass < 0:
            raise ValidationError("singular mass nu must be >= 0")
        for z in self.blaschke_zeros:
            if z.imag <= 0:
                raise ValidationError(f"Blaschke zero {z} is not in the open upper half-plane")
        _check_zero_pairing(self.blaschke_zeros)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def unchecked(cls, blaschke_zeros=(), translation_mass=0.0, singular_mass=0.0, sign=1):
        """Bypass validation; used to construct deliberately broken specs in checks."""
        return cls(tuple(blaschke_zeros), translation_mass, singular_mass, sign, validate=False)

    @property
    def is_identity(self):
        return (
            not self.blaschke_zeros
            and self.translation_mass == 0.0
            and self.singular_mass == 0.0
            and self.sign == 1
        )

    def as_doc(self):
        return {
            "zeros": complex_pairs(self.blaschke_zeros),
            "kappa": float(self.translation_mass),
            "nu": float(self.singular_mass),
            "sign": int(self.sign),
        }

    @classmethod
    def from_doc(cls, doc):
        return cls(
            tuple(from_complex_pairs(doc.get("zeros", []))),
            float(doc.get("kappa", 0.0)),
            float(doc.get("nu", 0.0)),
            int(doc.get("sign", 1)),
        )

    def save(self, path):
        return dump_doc(self.as_doc(), path)

    @classmethod
    def load(cls, path):
        return cls.from_doc(load_doc(path))

    def spec_hash(self):
        return doc_hash(self.as_doc())


def product(phi1, phi2):
    """Pointwise product; zeros concatenate, masses add, signs multiply."""
    return InnerFunctionSpec(
        phi1.blaschke_zeros + phi2.blaschke_zeros,
        phi1.translation_mass + phi2.translation_mass,
        phi1.singular_mass + phi2.singular_mass,
        phi1.sign * phi2.sign,
        validate=phi1.validate and phi2.validate,
    )


def eval_boundary(phi, p):
    """Boundary value phi(p) on the real line; vectorized over p.

    p = 0 is outside the domain when nu > 0 (essential singularity).
    """
    p = np.asarray(p, dtype=float)
    if phi.singular_mass > 0 and np.any(p == 0.0):
        raise DomainError("phi has a singular factor; p = 0 is not in its domain")
    out = np.full(p.shape, phi.sign, dtype=complex)
    if phi.translation_mass:
        out = out * np.exp(1j * phi.translation_mass * p)
    if phi.singular_mass:
        out = out * np.exp(-1j * phi.singular_mass / p)
    for z in phi.blaschke_zeros:
        out = out * (p - z) / (p - np.conj(z))
    return out if out.shape else complex(out)


def eval_upper_half_plane(phi, z):
    """Analytic continuation into Im z > 0; |result| <= 1."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("evaluation point must lie in the open upper half-plane")
    out = np.full(z.shape, phi.sign, dtype=complex)
    if phi.translation_mass:
        out = out * np.exp(1j * phi.translation_mass * z)
    if phi.singular_mass:
        out = out * np.exp(-1j * phi.singular_mass / z)
    for z0 in phi.blaschke_zeros:
        out = out * (z - z0) / (z - np.conj(z0))
    return out if out.shape else complex(out)


def limit_at_zero(phi):
    """Boundary value as p -> 0+; defined only when nu = 0."""
    if phi.singular_mass > 0:
        raise DomainError("phi oscillates at p = 0; no limit exists for nu > 0")
    out = complex(phi.sign)
    for z in phi.blaschke_zeros:
        out *= z / np.conj(z)
    return out


def verify_symmetric_inner(phi, sample_grid, tol=1e-12):
    """Check unit modulus and phi(-p) = conj(phi(p)) over a sample grid."""
    p = np.asarray(sample_grid, dtype=float)
    if p.size == 0:
        raise ValidationError("sample grid must be nonempty")
    if phi.singular_mass > 0 and np.any(p == 0.0):
        raise ValidationError("sample grid must avoid 0 when nu > 0")
    values = eval_boundary(phi, p)
    mirrored = eval_boundary(phi, -p)
    modulus_defect = float(np.max(np.abs(np.abs(values) - 1.0)))
    symmetry_defect = float(np.max(np.abs(mirrored - np.conj(values))))
    report = CheckReport(
        name="inner_function_symmetric",
        params={"spec": phi.as_doc(), "samples": int(p.size)},
        provenance={"spec_hash": phi.spec_hash()},
    )
    report.add("unit_modulus", modulus_defect, tol, "machine-precision bound")
    report.add("boundary_symmetry", symmetry_defect, tol, "machine-precision bound")
    return report
