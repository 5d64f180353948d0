"""Per-variety analysis reports and their JSON encoding.

Rationals are written as strings ``"p/q"`` (or ``"p"`` for integers) so the
JSON stays exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .ke import (
    KEVerdict,
    ObstructionInput,
    Verdict,
    bishop_degree_bound,
    bishop_gromov_surface,
    conical_lhs,
    conical_obstruction,
    ke_toric_test,
    obstruction_rhs,
    virtual_dim,
)
from .lattice import CyclicQuotientType, det3
from .polytope import FanoPolytope, PolytopeSummary, degree, gorenstein_index, make_fano, summarize
from .singularities import (
    SingularityEntry,
    SingularityReport,
    TSingularityWitness,
    classify_edges,
    mumford_instability,
)


def q_str(x: Optional[Fraction]) -> Optional[str]:
    if x is None:
        return None
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q_parse(s) -> Optional[Fraction]:
    if s is None:
        return None
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"expected an exact rational, got {s!r}")
    return Fraction(s)


@dataclass(frozen=True)
class ConicalReport:
    gamma_max: int
    volume_ratio: Fraction
    lhs: Fraction
    rhs: Fraction
    verdict: Verdict


@dataclass(frozen=True)
class AnalysisReport:
    source: str
    polytope: FanoPolytope
    summary: PolytopeSummary
    singularities: Optional[SingularityReport] = None
    ke: Optional[KEVerdict] = None
    smoothable: Optional[bool] = None
    bishop_surface: Optional[Verdict] = None
    bishop_degree: Optional[Verdict] = None
    mumford_unstable: Optional[bool] = None
    virtual_dim: Optional[Fraction] = None
    conical: Optional[ConicalReport] = None
    notes: tuple = ()

    def to_dict(self) -> dict:
        s = self.summary
        out: dict[str, Any] = {
            "input": self.source,
            "dim": self.polytope.dim,
            "vertices": [list(v) for v in self.polytope.vertices],
            "summary": {
                "degree": q_str(s.degree),
                "picard_rank": s.picard_rank,
                "gorenstein_index": s.gorenstein_index,
                "reflexive": s.reflexive,
                "barycenter": [q_str(x) for x in s.barycenter],
            },
        }
        if self.singularities is not None:
            sr = self.singularities
            out["singularities"] = {
                "gamma_max": sr.gamma_max,
                "min_discrepancy": q_str(sr.min_discrepancy),
                "labels": sr.labels(),
                "entries": [_entry_to_dict(e) for e in sr.entries],
            }
        if self.ke is not None:
            out["ke"] = {"ke_toric": self.ke.ke_toric, "soliton_only": self.ke.soliton_only,
                         "notes": list(self.ke.notes)}
        for key in ("smoothable", "mumford_unstable"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.bishop_surface is not None or self.bishop_degree is not None:
            out["bishop"] = {
                "surface_bound": None if self.bishop_surface is None else self.bishop_surface.value,
                "degree_bound": None if self.bishop_degree is None else self.bishop_degree.value,
            }
        if self.virtual_dim is not None:
            out["virtual_dim"] = q_str(self.virtual_dim)
        if self.conical is not None:
            c = self.conical
            out["conical"] = {"gamma_max": c.gamma_max, "volume_ratio": q_str(c.volume_ratio),
                              "lhs": q_str(c.lhs), "rhs": q_str(c.rhs), "verdict": c.verdict.value}
        out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        poly = make_fano(d["vertices"])
        if poly.dim != d["dim"]:
            raise ValueError("dimension field disagrees with vertices")
        s = d["summary"]
        summary = PolytopeSummary(
            degree=q_parse(s["degree"]),
            picard_rank=s["picard_rank"],
            gorenstein_index=s["gorenstein_index"],
            reflexive=s["reflexive"],
            barycenter=tuple(q_parse(x) for x in s["barycenter"]),
        )
        sing = None
        if "singularities" in d:
            sd = d["singularities"]
            sing = SingularityReport(
                entries=tuple(_entry_from_dict(e) for e in sd["entries"]),
                gamma_max=sd["gamma_max"],
                min_discrepancy=q_parse(sd["min_discrepancy"]),
            )
        ke = None
        if "ke" in d:
            ke = KEVerdict(d["ke"]["ke_toric"], d["ke"]["soliton_only"], tuple(d["ke"]["notes"]))
        bishop = d.get("bishop") or {}
        conical = None
        if "conical" in d:
            c = d["conical"]
            conical = ConicalReport(c["gamma_max"], q_parse(c["volume_ratio"]), q_parse(c["lhs"]),
                                    q_parse(c["rhs"]), Verdict(c["verdict"]))
        return cls(
            source=d["input"],
            polytope=poly,
            summary=summary,
            singularities=sing,
            ke=ke,
            smoothable=d.get("smoothable"),
            bishop_surface=_verdict_or_none(bishop.get("surface_bound")),
            bishop_degree=_verdict_or_none(bishop.get("degree_bound")),
            mumford_unstable=d.get("mumford_unstable"),
            virtual_dim=q_parse(d.get("virtual_dim")),
            conical=conical,
            notes=tuple(d.get("notes", ())),
        )


def _verdict_or_none(v):
    return None if v is None else Verdict(v)


def _entry_to_dict(e: SingularityEntry) -> dict:
    w = e.t_witness
    return {
        "edge": e.edge,
        "m": e.type.m,
        "q": e.type.q,
        "label": e.label(),
        "discrepancy": q_str(e.discrepancy),
        "t_witness": None if w is None else {"d": w.d, "n": w.n, "a": w.a,
                                             "canonical": w.canonical_flag},
        "multiplicity": e.multiplicity,
        "qg_def_dim": e.qg_def_dim,
    }


def _entry_from_dict(d: dict) -> SingularityEntry:
    w = d["t_witness"]
    return SingularityEntry(
        edge=d["edge"],
        type=CyclicQuotientType(d["m"], d["q"]),
        discrepancy=q_parse(d["discrepancy"]),
        t_witness=None if w is None else TSingularityWitness(w["d"], w["n"], w["a"], w["canonical"]),
        multiplicity=d["multiplicity"],
        qg_def_dim=d["qg_def_dim"],
    )


# ---------------------------------------------------------------- assembly

def simplicial_gamma_max(P: FanoPolytope) -> int:
    """Largest orbifold group order over the maximal cones of a simplicial 3D fan."""
    orders = []
    for f in P.facets:
        if len(f) != 3:
            raise ValueError("non-simplicial facet: orbifold order undefined")
        orders.append(abs(det3(*(P.vertices[i] for i in f))))
    return max(orders)


def analyze(P: FanoPolytope, source: str = "<memory>") -> AnalysisReport:
    summary = summarize(P)
    if P.dim == 2:
        sing = classify_edges(P)
        ke = ke_toric_test(P)
        notes = []
        if summary.reflexive:
            notes.append("reflexive (Gorenstein)")
        return AnalysisReport(
            source=source,
            polytope=P,
            summary=summary,
            singularities=sing,
            ke=ke,
            smoothable=sing.all_t,
            bishop_surface=bishop_gromov_surface(sing.gamma_max, summary.degree),
            bishop_degree=bishop_degree_bound(2, summary.gorenstein_index, summary.degree),
            mumford_unstable=mumford_instability(sing, 2),
            virtual_dim=virtual_dim(2, summary.degree),
            notes=tuple(notes),
        )
    gmax = simplicial_gamma_max(P)
    data = ObstructionInput(3, summary.degree, Fraction(1, gmax), summary.gorenstein_index)
    conical = ConicalReport(gmax, data.volume_ratio, conical_lhs(data), obstruction_rhs(3),
                            conical_obstruction(data))
    return AnalysisReport(source=source, polytope=P, summary=summary, conical=conical)


def obstruct3(d: int) -> ConicalReport:
    """Conical obstruction at the Z_d point of the toric threefold X_d."""
    from .polytope import xd_threefold

    P = xd_threefold(d)
    deg = degree(P)
    data = ObstructionInput(3, deg, Fraction(1, d), gorenstein_index(P))
    return ConicalReport(d, data.volume_ratio, conical_lhs(data), obstruction_rhs(3),
                         conical_obstruction(data))


# ---------------------------------------------------------------- text rendering

def render_text(r: AnalysisReport) -> str:
    s = r.summary
    lines = [
        f"input:            {r.source}",
        f"vertices:         {' '.join(str(v) for v in r.polytope.vertices)}",
        f"degree:           {q_str(s.degree)}",
        f"picard rank:      {s.picard_rank}",
        f"gorenstein index: {s.gorenstein_index}",
        f"barycenter:       ({', '.join(q_str(x) for x in s.barycenter)})",
    ]
    if r.singularities is not None:
        labels = r.singularities.labels()
        lines.append(f"singularities:    {' + '.join(labels) if labels else 'none'}")
        lines.append(f"gamma_max:        {r.singularities.gamma_max}")
        md = r.singularities.min_discrepancy
        lines.append(f"min discrepancy:  {'none (smooth)' if md is None else q_str(md)}")
    if r.ke is not None:
        lines.append(f"KE (toric):       {r.ke.ke_toric}")
    if r.smoothable is not None:
        lines.append(f"QG-smoothable:    {r.smoothable}")
    if r.bishop_surface is not None:
        lines.append(f"bishop (surface): {r.bishop_surface}")
    if r.bishop_degree is not None:
        lines.append(f"bishop (degree):  {r.bishop_degree}")
    if r.mumford_unstable is not None:
        lines.append(f"mumford unstable: {r.mumford_unstable}")
    if r.virtual_dim is not None:
        lines.append(f"virtual dim:      {q_str(r.virtual_dim)}")
    if r.conical is not None:
        c = r.conical
        lines.append(f"conical:          LHS {q_str(c.lhs)} vs RHS {q_str(c.rhs)}: {c.verdict}")
    for n in r.notes:
        lines.append(f"note:             {n}")
    return "\n".join(lines)
