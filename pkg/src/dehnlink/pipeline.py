"""End-to-end non-triviality certificates for link diagrams."""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field

from .diagram import (
    Diagram,
    checkerboard,
    is_alternating,
    is_connected,
    is_prime,
    is_reduced,
    reduce,
    split_factors,
    trace_faces,
)
from .errors import InternalInconsistency
from .longitude import longitude_word, normal_form
from .presentation import abelianization, build_presentation
from .solver import format_word, geodesic_reduce, is_geodesic, parity_changes

NONTRIVIAL = "Nontrivial"
TRIVIAL = "Trivial"
NOT_APPLICABLE = "NotApplicable"


@dataclass
class ComponentRecord:
    component: int
    slk: int
    double_length: int
    double_word: str
    meridian_word: str
    longitude_word: str
    geodesic_word: str
    geodesic_length: int
    nontrivial: bool
    normal_form: str | None = None
    normal_form_parity_changes: int | None = None


@dataclass
class FactorRecord:
    index: int
    pd: str
    crossings: int
    components: int
    verdict: str
    checks: dict = field(default_factory=dict)
    presentation: dict | None = None
    small_cancellation: dict | None = None
    longitudes: list[ComponentRecord] = field(default_factory=list)


@dataclass
class Certificate:
    input_digest: str
    input_crossings: int
    reduced_crossings: int
    verdict: str
    factors: list[FactorRecord]
    evidence: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def certify(d: Diagram, normal_forms: bool = False, source: bytes | None = None) -> Certificate:
    """Run reduction, factorisation and the longitude word problem.

    ``source`` (the raw input bytes) is hashed into the certificate when
    given; otherwise the diagram's PD text is.
    """
    digest = hashlib.sha256(source if source is not None else d.to_pd().encode()).hexdigest()
    r = reduce(d)
    factors = [_certify_factor(k, fac, normal_forms) for k, fac in enumerate(split_factors(r))]
    verdicts = {fr.verdict for fr in factors}
    if NOT_APPLICABLE in verdicts:
        verdict = NOT_APPLICABLE
    elif NONTRIVIAL in verdicts:
        verdict = NONTRIVIAL
    else:
        verdict = TRIVIAL
    evidence = None
    if verdict == NONTRIVIAL:
        fr = next(fr for fr in factors if fr.verdict == NONTRIVIAL)
        rec = next(c for c in fr.longitudes if c.nontrivial)
        evidence = {"factor": fr.index, "component": rec.component, "geodesic_word": rec.geodesic_word}
    return Certificate(digest, len(d.crossings), len(r.crossings), verdict, factors, evidence)


def _certify_factor(index: int, d: Diagram, normal_forms: bool) -> FactorRecord:
    rec = FactorRecord(index, d.to_pd(), len(d.crossings), d.n_components, TRIVIAL)
    if not d.crossings:
        return rec
    alt = is_alternating(d)
    rec.checks = {
        "connected": is_connected(d),
        "reduced": is_reduced(d),
        "prime": is_prime(d),
        "alternating": alt,
    }
    if not alt:
        rec.verdict = NOT_APPLICABLE
        return rec
    f = trace_faces(d)
    p = build_presentation(d, f, checkerboard(f))
    free_rank, torsion = abelianization(p)
    rec.presentation = {
        "generators": len(p.generators),
        "base_relators": len(p.base_relators),
        "symmetrized": len(p.symmetrized),
        "abelian_free_rank": free_rank,
        "abelian_torsion": torsion,
    }
    rec.small_cancellation = dict(p.small_cancellation)
    if not p.verified:
        raise InternalInconsistency(
            f"factor {index} is reduced, prime and alternating but fails C(4)-T(4)")
    for comp in range(d.n_components):
        rep = longitude_word(d, f, comp)
        geo = geodesic_reduce(rep.longitude_word, p)
        if geo and not is_geodesic(geo, p):
            raise InternalInconsistency("reduced longitude is not geodesic")
        cr = ComponentRecord(
            component=comp,
            slk=rep.slk,
            double_length=rep.double_length,
            double_word=format_word(rep.double_word),
            meridian_word=format_word(rep.meridian_word),
            longitude_word=format_word(rep.longitude_word),
            geodesic_word=format_word(geo),
            geodesic_length=len(geo),
            nontrivial=bool(geo),
        )
        if normal_forms:
            nf = normal_form(rep, p)
            if nf is not None:
                cr.normal_form = format_word(nf)
                cr.normal_form_parity_changes = parity_changes(nf, p)
        rec.longitudes.append(cr)
    if not any(c.nontrivial for c in rec.longitudes):
        raise InternalInconsistency(f"factor {index}: every longitude reduced to the identity")
    rec.verdict = NONTRIVIAL
    return rec
