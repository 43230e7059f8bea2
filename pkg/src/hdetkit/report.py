"""Full verification pipeline and its JSON / text report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .extalgebra import ExtAlgebra, LiftError, check_associativity, check_unit, ext_algebra
from .frobenius import DegeneratePairing, SocleError, frobenius_form, is_algebra_automorphism, nakayama_of_E
from .groebner import compute_gb
from .nakayama import NotGorenstein, f_sigma, hdet, lift_automorphism, recover_mu_A, verdicts
from .presentation import AlgebraPresentation, AutomorphismSpec, check_is_automorphism, format_presentation
from .resolution import betti_table, gorenstein_signature, minimal_resolution

__all__ = ["VerificationReport", "run_pipeline", "emit_report", "report_schema", "VERDICTS", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
VERDICTS = ("T41", "T42_deg1", "T42_full", "T53", "graded_symmetric", "epsilon_witness")


@dataclass
class VerificationReport:
    data: dict
    objects: dict = dc_field(default_factory=dict, repr=False)

    @property
    def verdicts(self) -> dict:
        return self.data["verdicts"]

    @property
    def exit_code(self) -> int:
        # graded_symmetric classifies the algebra; it fails only when it
        # disagrees with mu_A = 1
        failed = [k for k, v in self.verdicts.items() if v["value"] is False and k != "graded_symmetric"]
        mu = self.data.get("mu_A") or {}
        gs = self.verdicts["graded_symmetric"]["value"]
        if gs is not None and mu.get("used") and gs != mu.get("is_identity"):
            failed.append("graded_symmetric")
        if mu.get("declared_matches") is False:
            failed.append("mu_A")
        if self.data["errors"]:
            failed.append("errors")
        return 2 if failed else 0


def _s(F, x) -> str:
    return F.format(F(x))


def _mat(F, m) -> list:
    return [[_s(F, x) for x in row] for row in m]


def _bkey(b) -> str:
    return f"{b[0]},{b[1]}"


def _blocks(F, gl) -> dict:
    return {_bkey(b): _mat(F, m) for b, m in sorted(gl.blocks.items())}


def _aut(A: AlgebraPresentation, s: AutomorphismSpec) -> dict:
    return {A.gen_names[i]: A.format_poly(img) for i, img in enumerate(s.images)}


def _skip_all(reason: str) -> dict:
    return {k: {"value": None, "reason": reason} for k in VERDICTS}


def run_pipeline(A: AlgebraPresentation, cap_internal: int | None = None, cap_homological: int | None = None, stop_after: str | None = None, timing: bool = False) -> VerificationReport:
    """Run gb -> resolution -> signature -> ext -> frobenius -> lift/f/hdet -> verdicts."""
    N = A.cap_internal if cap_internal is None else cap_internal
    H = A.cap_homological if cap_homological is None else cap_homological
    F = A.field
    data: dict = {
        "schema_version": SCHEMA_VERSION,
        "input": {"presentation": format_presentation(A), "field": F.name, "cap_internal": N, "cap_homological": H},
        "errors": [],
        "notes": [],
        "verdicts": _skip_all("pipeline stopped early"),
    }
    obj: dict = {"A": A}
    rep = VerificationReport(data, obj)
    clock: dict = {}
    t0 = time.perf_counter()

    def tick(stage):
        nonlocal t0
        t1 = time.perf_counter()
        clock[stage] = round(t1 - t0, 4)
        t0 = t1

    def finish():
        if timing:
            data["timing"] = clock
        return rep

    # Groebner basis
    gb = compute_gb(A, max(N, A.max_relation_degree, max(A.gen_degrees, default=1)))
    obj["gb"] = gb
    data["groebner"] = {"rules": [A.format_poly(p) for p in gb.rule_polys()], "hilbert_dims": gb.hilbert_dims(N)}
    tick("gb")
    if stop_after == "gb":
        return finish()

    # resolution and signature
    P = minimal_resolution(A, gb, N, H)
    S = gorenstein_signature(P)
    obj["P"], obj["S"] = P, S
    data["resolution"] = {
        "betti": [[i, n, c] for (i, n), c in sorted(betti_table(P).items())],
        "v_degrees": [list(v) for v in P.v_degrees],
        "terminated": P.terminated,
        "complete": list(P.complete),
        "minimal": P.is_minimal(),
    }
    data["signature"] = {
        "d": S.d,
        "ell": S.ell,
        "regular": S.regular,
        "gorenstein_ok": S.gorenstein_ok,
        "ext_k_A": [list(t) for t in S.ext_classes],
        "reason": S.reason,
    }
    data["notes"] += P.notes
    if S.gorenstein_ok:
        data["notes"].append("noetherian hypothesis assumed, not checked")
    tick("resolution")
    if stop_after == "resolve":
        return finish()
    if S.gorenstein_ok is not True:
        why = "Gorenstein status unknown under the caps" if S.gorenstein_ok is None else "algebra is not AS Gorenstein"
        data["verdicts"] = _skip_all(why)
        data["notes"].append(f"verdicts skipped: {why}")
    if not all(P.complete[: (S.d if S.d is not None else P.length) + 1]):
        data["verdicts"] = _skip_all("caps too small: truncation may hide syzygies")
        data["notes"].append("verdicts skipped: caps too small")
        S.gorenstein_ok = None if S.gorenstein_ok else S.gorenstein_ok
        data["signature"]["gorenstein_ok"] = S.gorenstein_ok

    # Ext algebra
    try:
        E = ext_algebra(P, S)
    except LiftError as e:
        data["errors"].append({"stage": "ext", "message": str(e)})
        return finish()
    obj["E"] = E
    data["ext"] = _ext_json(E)
    tick("ext")
    if stop_after == "ext":
        return finish()

    # Frobenius structure
    try:
        Fr = frobenius_form(E)
        mu_E = nakayama_of_E(Fr)
    except (SocleError, DegeneratePairing) as e:
        data["frobenius"] = {"error": str(e), "nondegenerate": False}
        if S.gorenstein_ok:
            data["errors"].append({"stage": "frobenius", "message": str(e)})
        return finish()
    obj["F"], obj["mu_E"] = Fr, mu_E
    data["frobenius"] = {
        "socle_bidegree": list(Fr.socle_bidegree),
        "nondegenerate": Fr.nondegenerate,
        "pairing": {_bkey(b): _mat(F, m) for b, m in sorted(Fr.pairing.items())},
        "mu_E": _blocks(F, mu_E),
        "mu_E_is_automorphism": is_algebra_automorphism(mu_E, E),
    }
    tick("frobenius")
    if stop_after == "frobenius" or S.gorenstein_ok is not True:
        return finish()

    # mu_A, f_{mu_A}, hdet
    declared = A.autos.get("mu")
    recovered = None
    mu_info: dict = {"declared": _aut(A, declared) if declared else None, "recovered": None, "declared_matches": None}
    if A.generated_in_degree_one:
        recovered = recover_mu_A(mu_E, S.d, A)
        mu_info["recovered"] = _aut(A, recovered)
        mu_info["recovered_is_automorphism"] = check_is_automorphism(recovered, A, gb)
        if not mu_info["recovered_is_automorphism"]:
            data["errors"].append({"stage": "hdet", "message": "recovered mu_A does not preserve the relations"})
        if declared is not None:
            mu_info["declared_matches"] = declared.images == recovered.images
    else:
        data["notes"].append("mu_A recovery skipped: algebra not generated in degree 1")
    mu_A = declared or recovered
    mu_info["used"] = ("declared" if declared else "recovered") if mu_A else None
    mu_info["is_identity"] = mu_A.is_identity() if mu_A else None
    data["mu_A"] = mu_info
    f_mu = h = None
    if mu_A is not None:
        try:
            L = lift_automorphism(mu_A, P)
            f_mu = f_sigma(L, E)
            h = hdet(L, P, S)
        except (LiftError, NotGorenstein, ValueError) as e:
            data["errors"].append({"stage": "hdet", "message": str(e)})
            return finish()
        data["f_mu_A"] = _blocks(F, f_mu)
        data["hdet"] = {"mu_A": _s(F, h.scalar)}
    tick("hdet")
    if stop_after == "hdet":
        return finish()

    V = verdicts(A, P, E, Fr, mu_A, S, f_mu=f_mu, h=h)
    data["verdicts"] = {k: {"value": V.values.get(k), "reason": V.reasons.get(k, "")} for k in VERDICTS}
    tick("verdicts")
    return finish()


def _ext_json(E: ExtAlgebra) -> dict:
    F = E.field
    prods = []
    for (a, b), v in sorted(E.products.items()):
        if v:
            prods.append([E.label(a), E.label(b), {E.label(c): _s(F, x) for c, x in sorted(v.items())}])
    return {
        "dims": {_bkey(b): n for b, n in E.dims().items()},
        "basis": [E.label(a) for a in range(E.dim)],
        "products": prods,
        "associative": check_associativity(E),
        "unital": check_unit(E),
        "complete": E.complete,
    }


def emit_report(r: VerificationReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(r.data, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "text":
        return render_text(r.data).encode()
    raise ValueError(f"unknown format {fmt!r}")


def render_text(d: dict) -> str:
    out = []
    inp = d["input"]
    out.append(f"field {inp['field']}   caps: internal {inp['cap_internal']}, homological {inp['cap_homological']}")
    if "groebner" in d:
        g = d["groebner"]
        out.append("groebner basis: " + (", ".join(g["rules"]) or "(empty)"))
        out.append("hilbert dims:   " + " ".join(map(str, g["hilbert_dims"])))
    if "resolution" in d:
        out.append("betti (i, degree: count): " + ", ".join(f"({i}, {n}: {c})" for i, n, c in d["resolution"]["betti"]))
        s = d["signature"]
        out.append(f"signature: d={s['d']} ell={s['ell']} regular={_tv(s['regular'], 'unknown')} gorenstein_ok={_tv(s['gorenstein_ok'], 'unknown')}")
        if s["reason"]:
            out.append(f"  ({s['reason']})")
    if "ext" in d:
        out.append("ext dims: " + ", ".join(f"E^{{{k}}}={v}" for k, v in d["ext"]["dims"].items()))
    if "frobenius" in d:
        fr = d["frobenius"]
        if "error" in fr:
            out.append(f"frobenius: {fr['error']}")
        else:
            out.append(f"frobenius: socle at {tuple(fr['socle_bidegree'])}, nondegenerate={_tv(fr['nondegenerate'])}")
            for k, m in fr["mu_E"].items():
                out.append(f"  mu_E on E^{{{k}}}: {m}")
    if "mu_A" in d:
        m = d["mu_A"]
        if m["declared"]:
            out.append(f"mu_A declared:  {m['declared']}")
        if m["recovered"]:
            out.append(f"mu_A recovered: {m['recovered']}")
    if "hdet" in d:
        out.append(f"hdet(mu_A) = {d['hdet']['mu_A']}")
    out.append("")
    out.append("verdict            value    note")
    for k, v in d["verdicts"].items():
        out.append(f"{k:<18} {_tv(v['value']):<8} {v['reason']}")
    for e in d["errors"]:
        out.append(f"error [{e['stage']}]: {e['message']}")
    for n in d["notes"]:
        out.append(f"note: {n}")
    if "timing" in d:
        out.append("timing: " + ", ".join(f"{k} {v}s" for k, v in d["timing"].items()))
    return "\n".join(out) + "\n"


def _tv(v, none: str = "skipped") -> str:
    return {True: "true", False: "false", None: none}.get(v, str(v))


def report_schema() -> dict:
    return json.loads(resources.files("hdetkit").joinpath("report.schema.json").read_text())
