"""Per-site analysis reports (JSON-ready dicts and text)."""

from __future__ import annotations

from collections.abc import Iterable

from .field import JointField, SiteRef, is_positive
from .infosets import AMBIGUOUS, es_family, mi_family, reduction_family, si_family

TEXT_LIST_CAP = 32


def neighbor_label(field: JointField, neighbor) -> list[str] | str:
    if neighbor is AMBIGUOUS:
        return "ambiguous"
    if neighbor is None or not neighbor:
        return "empty"
    return field.names(neighbor)


def analyze_site(field: JointField, i: SiteRef, *, positive: bool | None = None,
                 limit: int | None = None) -> dict:
    i = field.site(i)
    if positive is None:
        positive = is_positive(field)
    besag = reduction_family(field, i, limit=limit)
    es = es_family(field, i, limit=limit)
    sets = lambda fam: [field.names(s) for s in fam]
    return {
        "site": field.site_names[i],
        "positive": positive,
        "besag": {"status": besag.status, "minimal_sets": sets(besag.minimal_sets)},
        "si_complement": sets(si_family(field, i, field.complement(i), limit=limit)),
        "mi": sets(mi_family(field, i, limit=limit)),
        "es": sets(es.family),
        "neighbor": neighbor_label(field, es.neighbor),
    }


def analyze_field(field: JointField, sites: Iterable[SiteRef] | None = None, *,
                  limit: int | None = None) -> dict:
    positive = is_positive(field)
    chosen = range(field.n) if sites is None else [field.site(s) for s in sites]
    return {"sites": [analyze_site(field, i, positive=positive, limit=limit) for i in chosen]}


def _fmt_set(names: list[str]) -> str:
    return "{" + ",".join(names) + "}"


def _fmt_family(family: list[list[str]]) -> str:
    shown = [_fmt_set(s) for s in family[:TEXT_LIST_CAP]]
    extra = len(family) - TEXT_LIST_CAP
    if extra > 0:
        shown.append(f"+{extra} more")
    return " ".join(shown) if shown else "(none)"


def render_text(report: dict) -> str:
    lines = []
    for entry in report["sites"]:
        nb = entry["neighbor"]
        nb_text = nb if isinstance(nb, str) else _fmt_set(nb)
        lines += [
            f"site {entry['site']}: neighbor {nb_text}",
            f"  positive: {str(entry['positive']).lower()}",
            f"  besag: {entry['besag']['status']}; minimal sets {_fmt_family(entry['besag']['minimal_sets'])}",
            f"  SI(i, i^c): {_fmt_family(entry['si_complement'])}",
            f"  MI(i): {_fmt_family(entry['mi'])}",
            f"  ES(i): {_fmt_family(entry['es'])}",
        ]
    return "\n".join(lines) + "\n"
