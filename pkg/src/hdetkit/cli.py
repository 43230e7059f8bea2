"""Command-line front end: hdetkit <verb> FILE [options].

FILE is a path to a ``.alg`` presentation or the name of a bundled
corpus entry (``poly2``, ``qplane2``, ...).  Exit codes: 0 success,
1 input error, 2 verdict failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .field import Field
from .groebner import CapExceeded
from .presentation import AutomorphismSpec, PresentationError, format_presentation, parse_presentation
from .report import emit_report, render_text, run_pipeline
from .twist import TwistSpec, graded_twist

VERBS = ("analyze", "gb", "resolve", "ext", "frobenius", "hdet", "twist", "verify")
SECTIONS = {
    "gb": ("input", "groebner"),
    "resolve": ("input", "resolution", "signature", "notes"),
    "ext": ("input", "signature", "ext"),
    "frobenius": ("input", "signature", "frobenius", "errors"),
    "hdet": ("input", "signature", "mu_A", "f_mu_A", "hdet", "automorphisms", "errors"),
    "verify": ("input", "signature", "verdicts", "errors", "notes"),
}


class InputError(Exception):
    pass


def corpus_names() -> list[str]:
    root = resources.files("hdetkit").joinpath("corpus")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".alg"))


def read_source(name: str) -> str:
    path = Path(name)
    if path.exists():
        return path.read_text()
    stem = path.name[:-4] if path.name.endswith(".alg") else path.name
    entry = resources.files("hdetkit").joinpath("corpus").joinpath(stem + ".alg")
    if entry.is_file():
        return entry.read_text()
    raise InputError(f"{name}: no such file or corpus entry (corpus: {', '.join(corpus_names())})")


def parse_field(text: str | None) -> Field | None:
    if text is None:
        return None
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ", "0"):
        return Field(0)
    if t.startswith("F"):
        t = t[1:]
    try:
        return Field(int(t))
    except ValueError as e:
        raise InputError(f"bad --field {text!r}: {e}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hdetkit", description="Ext-algebras, Nakayama automorphisms and homological determinants of graded algebras.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("file", help="presentation file or corpus name")
    ap.add_argument("--cap-internal", type=int, default=None)
    ap.add_argument("--cap-homological", type=int, default=None)
    ap.add_argument("--field", default=None, help="Q or F<p> (overrides the file)")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--output", "-o", default=None)
    ap.add_argument("--aut", default=None, help="automorphism name (twist, hdet)")
    ap.add_argument("--timing", action="store_true", help="include stage timings (makes JSON run-dependent)")
    return ap


def _load(args):
    src = read_source(args.file)
    A = parse_presentation(src, field=parse_field(args.field))
    for flag in ("cap_internal", "cap_homological"):
        v = getattr(args, flag)
        if v is not None and v < 1:
            raise InputError(f"--{flag.replace('_', '-')} must be >= 1")
    return A


def _write(args, payload: bytes):
    if args.output:
        Path(args.output).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()


def _hdet_table(rep) -> dict:
    from .nakayama import NotGorenstein, hdet, lift_automorphism

    obj = rep.objects
    if "S" not in obj or not obj["S"].gorenstein_ok:
        return {}
    A, P, S = obj["A"], obj["P"], obj["S"]
    out = {}
    for name, sigma in sorted(A.autos.items()):
        try:
            out[name] = A.field.format(hdet(lift_automorphism(sigma, P), P, S).scalar)
        except (NotGorenstein, ValueError) as e:
            out[name] = f"error: {e}"
    for c in (2, 3, -1):
        out[f"xi_{c}"] = A.field.format(hdet(lift_automorphism(AutomorphismSpec.xi(A, c), P), P, S).scalar)
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        A = _load(args)
        if args.verb == "twist":
            if not args.aut:
                raise InputError("twist needs --aut NAME")
            if args.aut not in A.autos:
                raise InputError(f"unknown automorphism {args.aut!r} (declared: {', '.join(A.autos) or 'none'})")
            B = graded_twist(TwistSpec(A, A.autos[args.aut]))
            _write(args, format_presentation(B).encode())
            return 0
        stop = {"gb": "gb", "resolve": "resolve", "ext": "ext", "frobenius": "frobenius"}.get(args.verb)
        rep = run_pipeline(A, args.cap_internal, args.cap_homological, stop_after=stop, timing=args.timing)
    except (PresentationError, InputError, CapExceeded, OSError) as e:
        print(f"hdetkit: error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"hdetkit: error: {e}", file=sys.stderr)
        return 1
    if args.verb == "hdet":
        rep.data["automorphisms"] = _hdet_table(rep)
    if args.verb in SECTIONS:
        data = {k: rep.data[k] for k in SECTIONS[args.verb] if k in rep.data}
    else:
        data = rep.data
    if args.format == "json":
        payload = (json.dumps(data, indent=2, sort_keys=True) + "\n").encode()
    elif args.verb == "analyze":
        payload = emit_report(rep, "text")
    else:
        payload = _section_text(args.verb, data)
    _write(args, payload)
    if args.verb in ("analyze", "verify"):
        return rep.exit_code
    return 0


def _section_text(verb: str, data: dict) -> bytes:
    if verb == "verify":
        full = {"input": data["input"], "errors": data.get("errors", []), "notes": data.get("notes", []), "verdicts": data["verdicts"]}
        if "signature" in data:
            full["signature"] = data["signature"]
        return render_text(full).encode()
    lines = []
    for k, v in data.items():
        if k == "input":
            continue
        lines.append(f"[{k}]")
        if isinstance(v, dict):
            for kk, vv in v.items():
                lines.append(f"  {kk}: {json.dumps(vv) if not isinstance(vv, str) else vv.strip()}")
        elif isinstance(v, list):
            lines += [f"  {json.dumps(x)}" for x in v]
        else:
            lines.append(f"  {v}")
    return ("\n".join(lines) + "\n").encode()


if __name__ == "__main__":
    sys.exit(main())
