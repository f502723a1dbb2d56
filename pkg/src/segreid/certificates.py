"""Certificate records: the replayable JSON trail of every probe.

A certificate pins (shape, k, prime, seed, generator, trials) and
carries every numeric outcome of the probe at that cell.  Replaying the
pinned inputs reproduces every numeric field bit for bit; wall_time_s
is informational only and excluded from the content digest, so the
digest (and the content-addressed store filename) identifies the
replayable content.  Every emission is validated against
CERTIFICATE_SCHEMA and against a recomputation of the verdict from the
numeric fields.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from pathlib import Path

import jsonschema

from .segre import COORDINATE_ORDER, ProductShape
from .tangency import CorankResult, Verdict, identifiability_verdict
from .terracini import SecantProbeResult, expected_dim

SCHEMA_VERSION = 1
GENERATOR_NAME = "splitmix64"

_VERDICT_VALUES = [
    "IdentifiableCertified",
    "NotIdentifiableDimensionCount",
    "KnownExceptionSecantOrder2",
    "DefectCandidate",
    "WeaklyDefectiveEvidence",
    "Undetermined",
]

CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "secant identifiability probe certificate",
    "type": "object",
    "additionalProperties": False,
    "required": [
        "schema_version",
        "shape",
        "k",
        "prime",
        "seed",
        "generator",
        "trials",
        "coordinate_order",
        "expected_dim",
        "observed_dim",
        "defect",
        "kernel_dim",
        "hyperplane_coeffs",
        "coranks",
        "verdict",
        "propagated_from_k",
        "cited",
        "notes",
        "wall_time_s",
    ],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "shape": {
            "type": "array",
            "minItems": 2,
            "items": {"type": "integer", "minimum": 1},
        },
        "k": {"type": "integer", "minimum": 1},
        "prime": {"type": "integer", "minimum": 3},
        "seed": {"type": "integer", "minimum": 0},
        "generator": {"const": GENERATOR_NAME},
        "trials": {"type": "integer", "minimum": 1},
        "coordinate_order": {"const": COORDINATE_ORDER},
        "expected_dim": {"type": "integer", "minimum": 0},
        "observed_dim": {"type": ["integer", "null"], "minimum": 0},
        "defect": {"type": ["integer", "null"], "minimum": 0},
        "kernel_dim": {"type": ["integer", "null"], "minimum": 0},
        "hyperplane_coeffs": {
            "type": ["array", "null"],
            "items": {"type": "integer", "minimum": 0},
        },
        "coranks": {
            "type": ["array", "null"],
            "items": {"type": "integer", "minimum": 0},
        },
        "verdict": {"enum": _VERDICT_VALUES},
        "propagated_from_k": {"type": ["integer", "null"], "minimum": 1},
        "cited": {"type": "array", "items": {"type": "string"}},
        "notes": {"type": "array", "items": {"type": "string"}},
        "wall_time_s": {"type": ["number", "null"], "minimum": 0},
    },
}


@dataclass(frozen=True)
class Certificate:
    """One probe cell, pinned inputs plus outcomes, ready for JSON."""

    shape: tuple[int, ...]
    k: int
    prime: int
    seed: int
    trials: int
    expected_dim: int
    observed_dim: int | None
    defect: int | None
    kernel_dim: int | None
    hyperplane_coeffs: tuple[int, ...] | None
    coranks: tuple[int, ...] | None
    verdict: str
    cited: tuple[str, ...]
    notes: tuple[str, ...] = ()
    propagated_from_k: int | None = None
    wall_time_s: float | None = None
    schema_version: int = SCHEMA_VERSION
    generator: str = GENERATOR_NAME
    coordinate_order: str = COORDINATE_ORDER

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "shape": list(self.shape),
            "k": self.k,
            "prime": self.prime,
            "seed": self.seed,
            "generator": self.generator,
            "trials": self.trials,
            "coordinate_order": self.coordinate_order,
            "expected_dim": self.expected_dim,
            "observed_dim": self.observed_dim,
            "defect": self.defect,
            "kernel_dim": self.kernel_dim,
            "hyperplane_coeffs": (
                None
                if self.hyperplane_coeffs is None
                else list(self.hyperplane_coeffs)
            ),
            "coranks": None if self.coranks is None else list(self.coranks),
            "verdict": self.verdict,
            "propagated_from_k": self.propagated_from_k,
            "cited": list(self.cited),
            "notes": list(self.notes),
            "wall_time_s": self.wall_time_s,
        }

    def json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        """sha256 over the canonical JSON without the wall time."""
        d = self.to_dict()
        d.pop("wall_time_s")
        payload = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def without_wall_time(self) -> "Certificate":
        return replace(self, wall_time_s=None)


def validate_certificate_dict(d: dict) -> None:
    jsonschema.validate(d, CERTIFICATE_SCHEMA)


def certificate_from_dict(d: dict) -> Certificate:
    validate_certificate_dict(d)
    return Certificate(
        shape=tuple(d["shape"]),
        k=d["k"],
        prime=d["prime"],
        seed=d["seed"],
        trials=d["trials"],
        expected_dim=d["expected_dim"],
        observed_dim=d["observed_dim"],
        defect=d["defect"],
        kernel_dim=d["kernel_dim"],
        hyperplane_coeffs=(
            None
            if d["hyperplane_coeffs"] is None
            else tuple(d["hyperplane_coeffs"])
        ),
        coranks=None if d["coranks"] is None else tuple(d["coranks"]),
        verdict=d["verdict"],
        propagated_from_k=d["propagated_from_k"],
        cited=tuple(d["cited"]),
        notes=tuple(d["notes"]),
        wall_time_s=d["wall_time_s"],
        schema_version=d["schema_version"],
        generator=d["generator"],
        coordinate_order=d["coordinate_order"],
    )


def certificate_from_probe(
    result,
    verdict: Verdict,
    wall_time_s: float | None = None,
    propagated_from_k: int | None = None,
) -> Certificate:
    """Build a certificate from a probe result and its verdict."""
    base = result.base if isinstance(result, CorankResult) else result
    cor = result if isinstance(result, CorankResult) else None
    return Certificate(
        shape=base.shape.factor_dims,
        k=base.k,
        prime=base.prime,
        seed=base.seed,
        trials=base.trials,
        expected_dim=base.expected_dim,
        observed_dim=base.observed_dim,
        defect=base.defect,
        kernel_dim=cor.kernel_dim if cor is not None else None,
        hyperplane_coeffs=cor.hyperplane_coeffs if cor is not None else None,
        coranks=cor.coranks if cor is not None else None,
        verdict=verdict.status.value,
        propagated_from_k=propagated_from_k,
        cited=verdict.cited,
        notes=verdict.notes,
        wall_time_s=wall_time_s,
    )


def arithmetic_certificate(
    shape: ProductShape,
    k: int,
    prime: int,
    seed: int,
    trials: int,
    verdict: Verdict,
    propagated_from_k: int | None = None,
) -> Certificate:
    """Certificate for a cell settled without running its own probe.

    Used for verdicts that follow from arithmetic alone (dimension
    count, recorded discrepancies) or propagate from a probe at a
    higher k: the numeric probe fields stay null.
    """
    return Certificate(
        shape=shape.factor_dims,
        k=k,
        prime=prime,
        seed=seed,
        trials=trials,
        expected_dim=expected_dim(shape, k),
        observed_dim=None,
        defect=None,
        kernel_dim=None,
        hyperplane_coeffs=None,
        coranks=None,
        verdict=verdict.status.value,
        propagated_from_k=propagated_from_k,
        cited=verdict.cited,
        notes=verdict.notes,
    )


def verdict_from_certificate(cert: Certificate) -> Verdict:
    """Recompute the verdict from a certificate's numeric fields.

    Every emission checks that this matches the stored verdict.  A
    propagated certificate reconstructs its support: a certified
    corank-0 probe at k' = propagated_from_k, which by construction had
    defect 0 and all coranks 0 there.
    """
    shape = ProductShape(cert.shape)
    probes = []
    if cert.propagated_from_k is not None:
        kk = cert.propagated_from_k
        exp = expected_dim(shape, kk)
        base = SecantProbeResult(
            shape=shape,
            k=kk,
            trials=cert.trials,
            prime=cert.prime,
            seed=cert.seed,
            observed_dim=exp,
            expected_dim=exp,
        )
        probes.append(
            CorankResult(
                base=base,
                kernel_dim=shape.ambient_dim - exp,
                hyperplane_coeffs=None,
                coranks=(0,) * (kk + 1),
            )
        )
    if cert.observed_dim is not None:
        base = SecantProbeResult(
            shape=shape,
            k=cert.k,
            trials=cert.trials,
            prime=cert.prime,
            seed=cert.seed,
            observed_dim=cert.observed_dim,
            expected_dim=cert.expected_dim,
        )
        if cert.coranks is not None or cert.kernel_dim is not None:
            probes.append(
                CorankResult(
                    base=base,
                    kernel_dim=cert.kernel_dim,
                    hyperplane_coeffs=cert.hyperplane_coeffs,
                    coranks=cert.coranks,
                )
            )
        else:
            probes.append(base)
    return identifiability_verdict(shape, cert.k, probes)


def write_certificate(cert: Certificate, directory) -> Path:
    """Write one content-addressed file; identical replays overwrite in place."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"cert-{cert.digest()[:16]}.json"
    path.write_text(cert.json_line() + "\n")
    return path
