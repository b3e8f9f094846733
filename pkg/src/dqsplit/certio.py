"""JSON certificate documents.

Every field element is stored as a canonical expression string over t and
the tower generators.  ``load_certificate`` rebuilds the tower by replaying
its steps in order, so each string only mentions generators adjoined before
it.
"""

from __future__ import annotations

import json

from .arith import render as render_ratfunc
from .engine import SplitCertificate, verify_certificate
from .parse import ParseError, parse_expr
from .quaternion import DerivationSpec, QuatAlgebra, mat, mat_det, render_spec
from .tower import (DiffBase, HyperExp, Primitive, Radical, RiccatiGen, Tower, describe_step,
                    render_elem)

SCHEMA_VERSION = 1


class CertificateFormatError(ValueError):
    pass


def _mat_strings(m):
    return [[render_elem(x) for x in row] for row in m]


def emit_certificate_json(cert: SplitCertificate) -> dict:
    tower = cert.tower
    return {
        "schema_version": SCHEMA_VERSION,
        "problem": {
            "t_prime": render_ratfunc(cert.algebra.base.t_prime),
            "alpha": render_ratfunc(cert.algebra.alpha),
            "beta": render_ratfunc(cert.algebra.beta),
            **render_spec(cert.spec),
        },
        "riccati": cert.riccati.render(),
        "tower": {
            "generator": "t",
            "t_prime": render_ratfunc(cert.algebra.base.t_prime),
            "steps": [describe_step(s) for s in tower.steps],
            "aliases": {k: render_elem(v) for k, v in sorted(tower.aliases.items())},
        },
        "xi": render_elem(cert.xi),
        "lambda1": render_elem(cert.lambda1),
        "lambda2": render_elem(cert.lambda2),
        "mu": render_elem(cert.mu),
        "P": _mat_strings(cert.P),
        "F": _mat_strings(cert.F),
        "det_F": render_elem(mat_det(cert.F)),
        "verified": bool(cert.verified),
        "trdeg": cert.trdeg,
        "sources": dict(cert.sources),
        "notes": list(cert.notes),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _get(doc, *keys):
    cur = doc
    for k in keys:
        if not isinstance(cur, dict) or k not in cur:
            raise CertificateFormatError(f"missing field {'.'.join(keys)}")
        cur = cur[k]
    return cur


def _parse(text, symbols, where):
    if not isinstance(text, str):
        raise CertificateFormatError(f"{where}: expected an expression string")
    try:
        return parse_expr(text, symbols)
    except ParseError as exc:
        raise CertificateFormatError(f"{where}: {exc}") from exc


def _replay(tower: Tower, step: dict, idx: int) -> Tower:
    sym = tower.symbols()
    where = f"tower.steps[{idx}]"
    kind, name = step.get("kind"), step.get("name")
    if not isinstance(name, str):
        raise CertificateFormatError(f"{where}: missing name")
    try:
        if kind == "radical":
            return tower.adjoin(Radical(int(step["n"]), _parse(step["radicand"], sym, where), name))
        if kind == "primitive":
            return tower.adjoin(Primitive(_parse(step["derivative"], sym, where), name))
        if kind == "hyperexp":
            return tower.adjoin(HyperExp(_parse(step["rate"], sym, where), name))
        if kind == "riccati":
            a = [_parse(step[k], sym, where) for k in ("a0", "a1", "a2")]
            return tower.adjoin(RiccatiGen(*a, name=name))
    except (KeyError, TypeError) as exc:
        raise CertificateFormatError(f"{where}: malformed step") from exc
    except ValueError as exc:
        if isinstance(exc, CertificateFormatError):
            raise
        raise CertificateFormatError(f"{where}: {exc}") from exc
    raise CertificateFormatError(f"{where}: unknown step kind {kind!r}")


def load_certificate(doc: dict) -> SplitCertificate:
    """Rebuild a certificate from its document.  ``verified`` and ``trdeg`` are
    taken from the document; call ``verify_certificate`` to re-check."""
    if _get(doc, "schema_version") != SCHEMA_VERSION:
        raise CertificateFormatError(f"unsupported schema_version {doc['schema_version']!r}")
    prob = _get(doc, "problem")
    p = {k: _parse(_get(prob, k), {}, f"problem.{k}")
         for k in ("t_prime", "alpha", "beta", "a1", "a2", "a3")}
    if not p["alpha"] or not p["beta"]:
        raise CertificateFormatError("problem: alpha and beta must be nonzero")
    alg = QuatAlgebra(p["alpha"], p["beta"], DiffBase(p["t_prime"]))
    spec = DerivationSpec(p["a1"], p["a2"], p["a3"])

    tower = Tower(alg.base)
    steps = _get(doc, "tower", "steps")
    if not isinstance(steps, list):
        raise CertificateFormatError("tower.steps must be a list")
    for i, step in enumerate(steps):
        if not isinstance(step, dict):
            raise CertificateFormatError(f"tower.steps[{i}] must be an object")
        tower = _replay(tower, step, i)
    base_sym = tower.symbols()
    for k, v in _get(doc, "tower", "aliases").items():
        tower.aliases[k] = tower.elem(_parse(v, base_sym, f"tower.aliases.{k}"))
    sym = tower.symbols()

    def el(key):
        return tower.elem(_parse(_get(doc, key), sym, key))

    def matrix(key):
        m = _get(doc, key)
        try:
            return mat(*(tower.elem(_parse(m[i][j], sym, f"{key}[{i}][{j}]"))
                         for i in range(2) for j in range(2)))
        except (IndexError, TypeError, KeyError) as exc:
            raise CertificateFormatError(f"{key} must be a 2x2 array") from exc

    return SplitCertificate(
        algebra=alg, spec=spec, tower=tower, xi=el("xi"), P=matrix("P"),
        lambda1=el("lambda1"), lambda2=el("lambda2"), mu=el("mu"), F=matrix("F"),
        verified=bool(doc.get("verified", False)), trdeg=int(doc.get("trdeg", tower.tr_degree())),
        sources=dict(doc.get("sources", {})), notes=list(doc.get("notes", [])),
    )


def loads(text: str) -> SplitCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    return load_certificate(doc)


def certificates_equal(a: SplitCertificate, b: SplitCertificate) -> bool:
    return emit_certificate_json(a) == emit_certificate_json(b)


__all__ = ["SCHEMA_VERSION", "CertificateFormatError", "emit_certificate_json", "dumps",
           "load_certificate", "loads", "certificates_equal", "verify_certificate"]
