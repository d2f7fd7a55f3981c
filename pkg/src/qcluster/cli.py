"""Command-line interface.

Every command builds one report dictionary; ``--format json`` prints it and
``--format text`` renders it line by line, so both carry the same data.
Exit status: 0 success, 1 verification failure or inconclusive search,
2 input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import ClusterError, InputError, SearchInconclusive, VerificationError
from .liegen import ARROW_CONVENTION, load_cartan, seed_from_word
from .pointed import as_pointed, check_sign_coherence
from .qtorus import TorusElement
from .seed import (Seed, apply_sequence, cluster_monomial, load_seed, rebase, seed_to_dict,
                   validate)
from .triangular import (InjectiveData, TriangularFamily, _sigma_from_degrees, box_window,
                         find_t1, verify_admissible, verify_compatibility,
                         verify_triangular_basis)
from .tropical import PHI_CONVENTION, compatibly_pointed, phi_path

DEFAULTS = {"window": 2, "trunc": 4, "depth": 8, "dmax": 3}


@dataclass
class RunConfig:
    command: str
    seed_path: str | None = None
    word: list = field(default_factory=list)
    window: int = DEFAULTS["window"]
    trunc: int = DEFAULTS["trunc"]
    format: str = "text"
    depth: int = DEFAULTS["depth"]
    dmax: int = DEFAULTS["dmax"]
    degree: list | None = None
    monomial: list | None = None
    t1_word: list | None = None
    check: bool = False
    cartan: str | None = None
    out: str | None = None

    def __post_init__(self):
        if self.trunc < 1:
            raise InputError("--trunc must be >= 1")
        if self.window < 0:
            raise InputError("--window must be >= 0")
        if self.depth < 0 or self.dmax < 0:
            raise InputError("--depth and --dmax must be >= 0")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _word(text: str | None) -> list[str]:
    if not text:
        return []
    return [x.strip() for x in text.split(",") if x.strip()]


def _elem(z: TorusElement) -> dict:
    out = {"text": str(z), "terms": z.to_json()}
    if z.trunc is not None:
        out["trunc"] = z.trunc[1]
    return out


def seed_file_text(seed: Seed) -> str:
    """Seed JSON with one matrix row per line."""
    d = seed_to_dict(seed)
    parts = [f'  "{k}": {json.dumps(d[k])}' for k in ("vertices", "frozen", "B", "Lambda")]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _header(extra: dict | None = None) -> dict:
    conv = {"phi": PHI_CONVENTION, "arrows": ARROW_CONVENTION,
            "product": "X^m * X^n = v^{Lambda(m,n)} X^{m+n}, v = q^(1/2)",
            "words": "first letter is mutated first"}
    if extra:
        conv.update(extra)
    return conv


def _load(cfg: RunConfig) -> Seed:
    if not cfg.seed_path:
        raise InputError("--seed is required")
    return load_seed(cfg.seed_path)


def _check_word(seed: Seed, word) -> None:
    for k in word:
        seed.index(k)
        if seed.index(k) not in seed.unfrozen:
            raise InputError(f"cannot mutate at frozen vertex {k!r}")


def _check_degree(seed: Seed, g, what="--degree") -> tuple:
    if g is None:
        raise InputError(f"{what} is required")
    if len(g) != seed.n:
        raise InputError(f"{what} has length {len(g)}, expected {seed.n}")
    return tuple(g)


def _bounds(cfg: RunConfig) -> dict:
    return {"window": cfg.window, "trunc": cfg.trunc, "depth": cfg.depth, "dmax": cfg.dmax}


# -- commands ---------------------------------------------------------------------

def cmd_mutate(cfg: RunConfig) -> tuple[dict, int]:
    s0 = _load(cfg)
    _check_word(s0, cfg.word)
    s = apply_sequence(s0, cfg.word)
    d = validate(s)
    data = {
        "command": "mutate", "word": list(cfg.word),
        "seed": seed_to_dict(s), "diagonal": list(d),
        "variables": {s.vertices[i]: _elem(x) for i, x in enumerate(s.vars)},
    }
    if cfg.out:
        Path(cfg.out).write_text(seed_file_text(s))
    return data, 0


def cmd_expand(cfg: RunConfig) -> tuple[dict, int]:
    s0 = _load(cfg)
    _check_word(s0, cfg.word)
    s = apply_sequence(s0, cfg.word)
    data = {"command": "expand", "word": list(cfg.word)}
    if cfg.monomial is not None:
        m = _check_degree(s, cfg.monomial, "--monomial")
        z = cluster_monomial(s, m)
        data["monomial"] = list(m)
        data["expansion"] = _elem(z)
        data["degree"] = list(as_pointed(z).degree)
    else:
        data["variables"] = {s.vertices[i]: _elem(x) for i, x in enumerate(s.vars)}
    return data, 0


def cmd_degree(cfg: RunConfig) -> tuple[dict, int]:
    s0 = _load(cfg)
    _check_word(s0, cfg.word)
    s = apply_sequence(s0, cfg.word)
    rep = check_sign_coherence(s0, s)
    data = {"command": "degree", "word": list(cfg.word),
            "degrees": {v: list(g) for v, g in rep.degrees.items()},
            "sign_coherent": rep.ok, "incoherent": list(rep.incoherent_rows),
            "witness": rep.witness}
    return data, 0 if rep.ok else 1


def cmd_tropical(cfg: RunConfig) -> tuple[dict, int]:
    s0 = _load(cfg)
    _check_word(s0, cfg.word)
    g = _check_degree(s0, cfg.degree)
    steps = [list(g)]
    for j in range(len(cfg.word)):
        steps.append(list(phi_path(s0, cfg.word[:j + 1], g)))
    data = {"command": "tropical", "word": list(cfg.word), "degree": list(g),
            "path": steps, "image": steps[-1]}
    return data, 0


def _injective_data(cfg: RunConfig, seed: Seed) -> InjectiveData:
    if cfg.t1_word is None:
        return find_t1(seed, cfg.depth)
    _check_word(seed, cfg.t1_word)
    t = rebase(seed)
    u = apply_sequence(t, cfg.t1_word)
    degs = [as_pointed(x).degree for x in u.vars]
    sigma = _sigma_from_degrees(t, degs)
    if sigma is None:
        raise InputError(f"--t1-word {','.join(cfg.t1_word)} does not reach t[1]")
    v = t.vertices
    return InjectiveData(tuple(str(k) for k in cfg.t1_word),
                         {v[k]: v[i] for k, i in sigma.items()},
                         {v[k]: as_pointed(u.vars[i]) for k, i in sigma.items()}, u)


def _family(cfg: RunConfig, seed: Seed) -> TriangularFamily:
    data = _injective_data(cfg, seed)
    return TriangularFamily(seed, data, trunc=cfg.trunc, max_depth=cfg.depth,
                            window=box_window(seed.n, cfg.window))


def _t1_report(fam: TriangularFamily) -> dict:
    d = fam.injective_data
    return {"word": list(d.word), "sigma": dict(sorted(d.sigma.items())),
            "injectives": {k: {"degree": list(p.degree), **_elem(p.element)}
                           for k, p in sorted(d.injectives.items())}}


def _checks(fam: TriangularFamily, cfg: RunConfig) -> list:
    s = fam.seed
    out = [verify_triangular_basis(fam)]
    for k in s.unfrozen:
        out.append(verify_admissible(fam, s.vertices[k], cfg.dmax))
        out.append(verify_compatibility(fam, s.vertices[k], dmax=cfg.dmax))
    stab = _stability(fam)
    out.append(stab)
    return out


def _stability(fam: TriangularFamily):
    from .triangular import Diagnostics

    diag = Diagnostics("truncation_stability")
    for g in fam.window:
        diag.checked += 1
        if not fam.stable(g):
            return diag.fail(g=g)
    return diag


def cmd_tribasis(cfg: RunConfig) -> tuple[dict, int]:
    s = _load(cfg)
    fam = _family(cfg, s)
    blocks = []
    for g in fam.window:
        r = fam.kl(g)
        blocks.append({"degree": list(g), "f": _elem(r.element),
                       "certificate": [{"degree": list(h), "coeff": str(c)}
                                       for h, c in sorted(r.coefficients.items())]})
    data = {"command": "tribasis", "bounds": _bounds(cfg), "t1": _t1_report(fam),
            "functions": blocks}
    status = 0
    if cfg.check:
        diags = _checks(fam, cfg)
        data["checks"] = [d.to_json() for d in diags]
        status = 0 if all(d.ok for d in diags) else 1
    return data, status


def _tropical_oracle(seed: Seed, length: int, window: int):
    """Degrees of small cluster monomials versus transported degrees, along all short words."""
    from .triangular import Diagnostics

    diag = Diagnostics("tropical_oracle")
    t = rebase(seed)
    uf = [t.vertices[k] for k in t.unfrozen]
    words = [()]
    for L in range(1, length + 1):
        words += [w for w in itertools.product(uf, repeat=L)
                  if all(a != b for a, b in zip(w, w[1:]))]
    for w in words:
        s = apply_sequence(t, w)
        seeds = [t, s]
        for m in itertools.product(range(min(window, 1) + 1), repeat=t.n):
            z = cluster_monomial(s, m)
            diag.checked += 1
            rep = compatibly_pointed(z, seeds)
            if not rep.ok:
                return diag.fail(word=list(w), monomial=list(m), detail=rep.witness)
    return diag


def cmd_check(cfg: RunConfig) -> tuple[dict, int]:
    s = _load(cfg)
    d = validate(s)
    fam = _family(cfg, s)
    diags = _checks(fam, cfg)
    diags.append(_tropical_oracle(s, 2, cfg.window))
    data = {"command": "check", "bounds": _bounds(cfg), "diagonal": list(d),
            "t1": _t1_report(fam), "checks": [x.to_json() for x in diags],
            "ok": all(x.ok for x in diags)}
    return data, 0 if data["ok"] else 1


def cmd_from_word(cfg: RunConfig) -> tuple[dict, int]:
    if not cfg.cartan:
        raise InputError("--cartan is required")
    if not cfg.word:
        raise InputError("--word is required")
    c = load_cartan(cfg.cartan)
    s = seed_from_word(c, cfg.word)
    data = {"command": "from-word", "cartan": [list(r) for r in c.matrix],
            "word": list(cfg.word), "seed": seed_to_dict(s), "diagonal": list(validate(s))}
    if cfg.out:
        Path(cfg.out).write_text(seed_file_text(s))
    return data, 0


COMMANDS = {
    "mutate": cmd_mutate, "expand": cmd_expand, "degree": cmd_degree,
    "tropical": cmd_tropical, "tribasis": cmd_tribasis, "check": cmd_check,
    "from-word": cmd_from_word,
}


# -- rendering --------------------------------------------------------------------

def _mat(rows) -> str:
    return "[" + ", ".join("[" + ",".join(str(x) for x in r) + "]" for r in rows) + "]"


def render_text(data: dict) -> str:
    lines = ["# conventions"]
    for k, v in data["conventions"].items():
        lines.append(f"#   {k}: {v}")
    cmd = data.get("command")
    if "error" in data:
        lines.append(f"error: {data['error']}")
        return "\n".join(lines) + "\n"
    if "bounds" in data:
        lines.append("bounds: " + " ".join(f"{k}={v}" for k, v in data["bounds"].items()))
    if "word" in data:
        lines.append("word: " + (",".join(str(x) for x in data["word"]) or "(empty)"))
    if "seed" in data:
        sd = data["seed"]
        lines.append("vertices: " + ",".join(sd["vertices"]))
        lines.append("frozen: " + (",".join(sd["frozen"]) or "(none)"))
        lines.append("B: " + _mat(sd["B"]))
        lines.append("Lambda: " + _mat(sd["Lambda"]))
    if "diagonal" in data:
        lines.append("d: " + str(data["diagonal"]))
    if "variables" in data:
        for v, e in data["variables"].items():
            lines.append(f"X_{v} = {e['text']}")
    if cmd == "expand" and "monomial" in data:
        lines.append(f"monomial {data['monomial']}: {data['expansion']['text']}")
        lines.append(f"degree: {data['degree']}")
    if cmd == "degree":
        for v, g in data["degrees"].items():
            lines.append(f"{v}: {g}")
        lines.append(f"sign-coherent: {'yes' if data['sign_coherent'] else 'no'}")
    if cmd == "tropical":
        for i, g in enumerate(data["path"]):
            lines.append(f"step {i}: {g}")
    if "t1" in data:
        t1 = data["t1"]
        lines.append("t[1] word: " + (",".join(t1["word"]) or "(empty)"))
        lines.append("sigma: " + ", ".join(f"{k}->{v}" for k, v in t1["sigma"].items()))
        for k, e in t1["injectives"].items():
            lines.append(f"I_{k} = {e['text']}   deg {e['degree']}")
    for b in data.get("functions", []):
        lines.append(f"g = {b['degree']}")
        lines.append(f"  f = {b['f']['text']}")
        cert = ", ".join(f"{c['degree']}: {c['coeff']}" for c in b["certificate"])
        lines.append(f"  certificate: {cert}")
    for c in data.get("checks", []):
        s = f"check {c['name']}: {'PASS' if c['ok'] else 'FAIL'} ({c['checked']} checks)"
        if not c["ok"]:
            s += " witness=" + json.dumps(c["witness"], sort_keys=True)
        lines.append(s)
        for note in c.get("notes", []):
            lines.append(f"  note: {note}")
    if "ok" in data:
        lines.append("result: " + ("PASS" if data["ok"] else "FAIL"))
    return "\n".join(lines) + "\n"


def render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    return render_text(data)


# -- entry point ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcluster", description="Quantum cluster algebra kernel.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        if seed:
            sp.add_argument("--seed", dest="seed_path", help="seed JSON file")
        sp.add_argument("--format", choices=["text", "json"], default="text")
        return sp

    sp = common(sub.add_parser("mutate", help="mutate along a word and print the seed"))
    sp.add_argument("--word", default="")
    sp.add_argument("--out")
    sp = common(sub.add_parser("expand", help="expansions in the initial torus"))
    sp.add_argument("--word", default="")
    sp.add_argument("--monomial")
    sp = common(sub.add_parser("degree", help="degree matrix and sign-coherence"))
    sp.add_argument("--word", default="")
    sp = common(sub.add_parser("tropical", help="transport a degree along a word"))
    sp.add_argument("--word", default="")
    sp.add_argument("--degree", required=True)
    for name in ("tribasis", "check"):
        sp = common(sub.add_parser(name, help="triangular functions" if name == "tribasis"
                                   else "run all verifications"))
        sp.add_argument("--window", type=int, default=DEFAULTS["window"])
        sp.add_argument("--trunc", type=int, default=DEFAULTS["trunc"])
        sp.add_argument("--depth", type=int, default=DEFAULTS["depth"])
        sp.add_argument("--dmax", type=int, default=DEFAULTS["dmax"])
        sp.add_argument("--t1-word")
        if name == "tribasis":
            sp.add_argument("--check", action="store_true")
    sp = common(sub.add_parser("from-word", help="seed from a reduced word"), seed=False)
    sp.add_argument("--cartan", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--out")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {"command": ns.command, "format": ns.format}
    for name in ("seed_path", "window", "trunc", "depth", "dmax", "check", "cartan", "out"):
        if hasattr(ns, name):
            kw[name] = getattr(ns, name)
    if hasattr(ns, "word"):
        kw["word"] = _word(ns.word)
    if getattr(ns, "degree", None) is not None:
        kw["degree"] = _ints(ns.degree)
    if getattr(ns, "monomial", None) is not None:
        kw["monomial"] = _ints(ns.monomial)
    if getattr(ns, "t1_word", None) is not None:
        kw["t1_word"] = _word(ns.t1_word)
    return RunConfig(**kw)


def run(cfg: RunConfig) -> tuple[int, str]:
    try:
        data, status = COMMANDS[cfg.command](cfg)
    except InputError as exc:
        data, status = {"command": cfg.command, "error": str(exc)}, 2
    except (VerificationError, SearchInconclusive) as exc:
        data = {"command": cfg.command, "error": str(exc)}
        if isinstance(exc, VerificationError) and exc.witness is not None:
            data["witness"] = exc.witness
        status = 1
    except ClusterError as exc:
        data, status = {"command": cfg.command, "error": f"{type(exc).__name__}: {exc}"}, 1
    data = {"conventions": _header(), **data}
    return status, render(data, cfg.format)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    status, text = run(cfg)
    stream = sys.stderr if status == 2 and cfg.format == "text" else sys.stdout
    stream.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
