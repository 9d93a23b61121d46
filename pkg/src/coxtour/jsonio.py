"""JSON wire formats for tournaments and scores."""

from __future__ import annotations

from typing import Any

from .core import EdgeKind, RootSystem, ScoreVector, SignedEdge, Tournament, score
from .errors import PreconditionError


def tournament_to_json(t: Tournament, include_score: bool = False) -> dict[str, Any]:
    out: dict[str, Any] = {"family": t.system.family.value, "n": t.system.n, "bits": t.bits}
    if include_score:
        out["score"] = score(t).to_strings()
    return out


def tournament_to_expanded_json(t: Tournament) -> dict[str, Any]:
    edges = []
    for e, w in zip(t.edges(), t.outcomes):
        item: dict[str, Any] = {"kind": e.kind.value, "i": e.i}
        if e.j:
            item["j"] = e.j
        item["win"] = bool(w)
        edges.append(item)
    return {"family": t.system.family.value, "n": t.system.n, "edges": edges}


def tournament_from_json(data: dict[str, Any]) -> Tournament:
    """Parse either the compact ``bits`` form or the expanded ``edges`` form."""
    try:
        system = RootSystem(data["family"], data["n"])
    except KeyError as exc:
        raise PreconditionError(f"tournament JSON missing field {exc}") from None
    if "bits" in data:
        return Tournament.from_bits(system, str(data["bits"]))
    if "edges" not in data:
        raise PreconditionError("tournament JSON needs either 'bits' or 'edges'")
    outcomes: dict[SignedEdge, int] = {}
    for item in data["edges"]:
        kind = EdgeKind(item["kind"])
        edge = SignedEdge(kind, int(item["i"]), int(item.get("j", 0)))
        if edge in outcomes:
            raise PreconditionError(f"edge {edge} listed twice")
        outcomes[edge] = 1 if item["win"] else 0
    if len(outcomes) != system.num_positive_roots:
        raise PreconditionError(
            f"expanded form lists {len(outcomes)} edges, {system} has {system.num_positive_roots}"
        )
    return Tournament.from_outcomes(system, outcomes)


def parse_score(tokens: list[str]) -> ScoreVector:
    return ScoreVector.from_values(tokens)


def score_to_json(s: ScoreVector) -> list[str]:
    return s.to_strings()
