"""Command-line entry point.

Owns the expression grammar (parse and print), the line-oriented scenario
file format, report assembly, and one subcommand per library surface.
Exit codes: 0 everything verified or answered, 1 usage or parse error,
2 at least one inconclusive outcome, 3 a refuted theorem-severity claim.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Optional, Sequence

from . import __version__
from . import closure as closure_mod
from . import corpus, scenarios
from .groebner import quotient_ring
from .koszul import build_koszul, homology_with_coefficients
from .modops import IdealHandle, colon, ideal
from .polyring import Polynomial, Ring, ambient, make_order, parse_field
from .resolutions import (matlis_dual, minimal_resolution,
                          regular_action_module, tor)
from .modops import annihilator as module_annihilator

# ---------------------------------------------------------------------------
# polynomial grammar
#
# expr   := term (('+' | '-') term)*
# term   := factor ('*' factor)*
# factor := ('+' | '-') factor | power
# power  := atom ('^' INT)?
# atom   := IDENT | INT ('/' INT)? | '(' expr ')'
#
# No implicit multiplication; '/' occurs only inside rational literals.


class PolynomialSyntaxError(ValueError):
    """Malformed expression; position is the 0-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"column {position + 1}: {message}")
        self.position = position


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        elif ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolynomialSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _ExpressionParser:
    def __init__(self, text: str, over):
        self.tokens = _tokenize(text)
        self.k = 0
        base = ambient(over)
        self.base = base
        self.field = base.field
        self.vars = {name: base.variable(i)
                     for i, name in enumerate(base.vars)}

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def parse(self) -> Polynomial:
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {text!r}", pos)
        return node

    def expr(self) -> Polynomial:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self) -> Polynomial:
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = node * self.factor()
        return node

    def factor(self) -> Polynomial:
        kind = self.peek()[0]
        if kind in ("+", "-"):
            op = self.take()[0]
            inner = self.factor()
            return inner if op == "+" else -inner
        return self.power()

    def power(self) -> Polynomial:
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            kind, text, pos = self.peek()
            if kind == "-":
                raise PolynomialSyntaxError("negative exponent", pos)
            if kind != "int":
                raise PolynomialSyntaxError(
                    "exponent must be a nonnegative integer", pos)
            self.take()
            node = node ** int(text)
        return node

    def atom(self) -> Polynomial:
        kind, text, pos = self.take()
        if kind == "ident":
            try:
                return self.vars[text]
            except KeyError:
                raise PolynomialSyntaxError(f"unknown variable {text!r}", pos)
        if kind == "int":
            num = self.field.from_int(int(text))
            if self.peek()[0] == "/":
                self.take()
                kind2, text2, pos2 = self.peek()
                if kind2 != "int":
                    raise PolynomialSyntaxError("malformed rational literal",
                                                pos2)
                self.take()
                if int(text2) == 0:
                    raise PolynomialSyntaxError("zero denominator", pos2)
                num = self.field.div(num, self.field.from_int(int(text2)))
            return self.base.constant(num)
        if kind == "(":
            node = self.expr()
            kind2, text2, pos2 = self.take()
            if kind2 != ")":
                raise PolynomialSyntaxError("expected ')'", pos2)
            return node
        shown = text if text else "end of input"
        raise PolynomialSyntaxError(f"unexpected {shown!r}", pos)


def parse_polynomial(text: str, over) -> Polynomial:
    """Parse one expression over the given ring (grammar above)."""
    return _ExpressionParser(text, over).parse()


def print_polynomial(p: Polynomial) -> str:
    """Canonical form: descending ring order, explicit '*', '^'."""
    return str(p)


# ---------------------------------------------------------------------------
# scenario files
#
# Line-oriented sections:  [ring] / [ideal NAME] / [module NAME] /
# [recipe NAME] / [check ID [LABEL]], each holding  key = value  lines.
# ';' and '#' start comment lines.


class ScenarioError(ValueError):
    pass


_RING_KEYS = ("vars", "field", "order")
_IDEAL_KEYS = ("gens",)
_MODULE_KEYS = ("type", "relations", "rank", "twists")
_RECIPE_KEYS = ("kind", "seed", "nvars", "field", "max_degree", "count",
                "size", "entry_degree", "codim")
_CHECK_KEYS = ("name", "ideal", "aux", "module", "t", "t_values", "pd",
               "m_max", "seed", "question")
_RECIPE_INTS = ("seed", "nvars", "max_degree", "count", "size",
                "entry_degree", "codim")


def _split_list(value: str) -> list:
    return [part.strip() for part in value.split(",") if part.strip()]


class Scenario:
    """Parsed scenario file: a ring, named ideals and modules, and check
    requests.  to_text() emits the canonical form; parsing that text back
    reproduces the same scenario."""

    def __init__(self):
        self.ring: Optional[Ring] = None
        self.ideal_order: list = []
        self.ideals: dict = {}
        self.ideal_gens: dict = {}
        self.recipes: dict = {}
        self.module_order: list = []
        self.modules: dict = {}
        self.checks: list = []

    # -- resolution helpers

    def ideal(self, name: str = "") -> IdealHandle:
        if not name:
            if not self.ideal_order:
                raise ScenarioError("scenario defines no ideals")
            name = self.ideal_order[0]
        if name not in self.ideals:
            raise ScenarioError(f"unknown ideal {name!r}")
        return self.ideals[name]

    def check_module(self, name: str):
        """A module usable by the check runners: cyclic quotient or free."""
        spec = self._module_spec(name)
        if spec[0] == "cyclic_quotient":
            return ideal(self.ring, spec[1])
        if spec[0] == "free":
            return (spec[1], spec[2], ())
        raise ScenarioError(
            f"module {name!r} has type {spec[0]}; checks accept "
            "cyclic_quotient or free")

    def action_module(self, name: str):
        """A finite-length coefficient module with explicit actions."""
        spec = self._module_spec(name)
        if spec[0] not in ("dual", "regular"):
            raise ScenarioError(
                f"module {name!r} has type {spec[0]}; coefficients need "
                "dual or regular")
        q = quotient_ring(self.ring, list(spec[1]))
        return matlis_dual(q) if spec[0] == "dual" else \
            regular_action_module(q)

    def _module_spec(self, name: str):
        if name not in self.modules:
            raise ScenarioError(f"unknown module {name!r}")
        return self.modules[name]

    def tasks(self) -> list:
        """(check id, instance) pairs ready for the suite runner."""
        out = []
        for entry in self.checks:
            check_id = entry["check"]
            inst = {}
            if "ideal" in entry:
                inst["ideal"] = self.ideal(entry["ideal"])
            elif self.ring is not None:
                inst["ring"] = self.ring
            if "aux" in entry:
                inst["aux"] = self.ideal(entry["aux"])
            if "module" in entry:
                inst["module"] = self.check_module(entry["module"])
            for key in ("t", "pd", "m_max", "seed", "question"):
                if key in entry:
                    inst[key] = entry[key]
            if "t_values" in entry:
                inst["t_values"] = entry["t_values"]
            inst["name"] = entry.get("name") or entry.get("label") or \
                entry.get("ideal", "ring")
            out.append((check_id, inst))
        return out

    # -- canonical text

    def to_text(self) -> str:
        lines = []
        if self.ring is not None:
            lines.append("[ring]")
            lines.append("vars = " + ", ".join(self.ring.vars))
            lines.append("field = " + self.ring.field.spec_string())
            lines.append("order = " + self.ring.order.kind)
            lines.append("")
        for name in self.ideal_order:
            if name in self.recipes:
                lines.append(f"[recipe {name}]")
                params = self.recipes[name]
                for key in _RECIPE_KEYS:
                    if key in params:
                        lines.append(f"{key} = {params[key]}")
            else:
                lines.append(f"[ideal {name}]")
                gens = ", ".join(print_polynomial(g)
                                 for g in self.ideal_gens[name])
                lines.append("gens = " + gens)
            lines.append("")
        for name in self.module_order:
            spec = self.modules[name]
            lines.append(f"[module {name}]")
            lines.append("type = " + spec[0])
            if spec[0] == "free":
                lines.append(f"rank = {spec[1]}")
                lines.append("twists = " + ", ".join(str(t)
                                                     for t in spec[2]))
            else:
                rels = ", ".join(print_polynomial(g) for g in spec[1])
                lines.append("relations = " + rels)
            lines.append("")
        for entry in self.checks:
            header = entry["check"]
            if entry.get("label"):
                header += " " + entry["label"]
            lines.append(f"[check {header}]")
            for key in _CHECK_KEYS:
                if key in entry:
                    value = entry[key]
                    if key == "t_values":
                        value = ", ".join(str(t) for t in value)
                    lines.append(f"{key} = {value}")
            lines.append("")
        return "\n".join(lines)

    def signature(self):
        """Comparable canonical content (round-trip equality)."""
        return self.to_text()


def parse_scenario(text: str) -> Scenario:
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith((";", "#")):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ScenarioError(f"line {lineno}: unterminated section "
                                    "header")
            tokens = line[1:-1].split()
            if not tokens:
                raise ScenarioError(f"line {lineno}: empty section header")
            current = [tokens[0], tuple(tokens[1:]), {}, lineno]
            sections.append(current)
        else:
            if current is None:
                raise ScenarioError(f"line {lineno}: key outside any section")
            key, eq, value = line.partition("=")
            if not eq:
                raise ScenarioError(f"line {lineno}: expected key = value")
            key = key.strip()
            if key in current[2]:
                raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
            current[2][key] = value.strip()
    return _resolve_sections(sections)


def _known_keys(kind: str, keys, allowed, lineno: int) -> None:
    for key in keys:
        if key not in allowed:
            raise ScenarioError(
                f"line {lineno}: unknown {kind} key {key!r}")


def _resolve_sections(sections) -> Scenario:
    scen = Scenario()
    for kind, names, keys, lineno in sections:
        if kind == "ring":
            _known_keys("ring", keys, _RING_KEYS, lineno)
            if scen.ring is not None:
                raise ScenarioError(f"line {lineno}: duplicate ring section")
            if "vars" not in keys:
                raise ScenarioError(f"line {lineno}: ring needs vars")
            scen.ring = Ring(tuple(_split_list(keys["vars"])),
                             parse_field(keys.get("field", "q")),
                             make_order(keys.get("order", "grevlex")))
        elif kind == "ideal":
            _known_keys("ideal", keys, _IDEAL_KEYS, lineno)
            name = _section_name(names, kind, lineno)
            if scen.ring is None:
                raise ScenarioError(f"line {lineno}: ideal before any ring")
            if name in scen.ideals:
                raise ScenarioError(f"line {lineno}: duplicate ideal "
                                    f"{name!r}")
            gens = [parse_polynomial(g, scen.ring)
                    for g in _split_list(keys.get("gens", ""))]
            scen.ideal_order.append(name)
            scen.ideal_gens[name] = gens
            scen.ideals[name] = ideal(scen.ring, gens)
        elif kind == "recipe":
            _known_keys("recipe", keys, _RECIPE_KEYS, lineno)
            name = _section_name(names, kind, lineno)
            if name in scen.ideals:
                raise ScenarioError(f"line {lineno}: duplicate ideal "
                                    f"{name!r}")
            if "kind" not in keys or "seed" not in keys:
                raise ScenarioError(f"line {lineno}: recipe needs kind "
                                    "and seed")
            params = {"kind": keys["kind"]}
            for key in _RECIPE_INTS:
                if key in keys:
                    params[key] = int(keys[key])
            if "field" in keys:
                params["field"] = keys["field"]
            recipe_kwargs = dict(params)
            recipe_kind = recipe_kwargs.pop("kind")
            recipe_seed = recipe_kwargs.pop("seed")
            if "field" in recipe_kwargs:
                recipe_kwargs["field"] = parse_field(recipe_kwargs["field"])
            handle = corpus.generate(corpus.GeneratorRecipe(
                recipe_kind, recipe_seed, **recipe_kwargs))
            scen.ideal_order.append(name)
            scen.recipes[name] = params
            scen.ideals[name] = handle
        elif kind == "module":
            _known_keys("module", keys, _MODULE_KEYS, lineno)
            name = _section_name(names, kind, lineno)
            if name in scen.modules:
                raise ScenarioError(f"line {lineno}: duplicate module "
                                    f"{name!r}")
            mtype = keys.get("type")
            if mtype == "free":
                rank = int(keys.get("rank", "1"))
                twists = tuple(int(t) for t in
                               _split_list(keys.get("twists", "")))
                if not twists:
                    twists = tuple(0 for _ in range(rank))
                if len(twists) != rank:
                    raise ScenarioError(f"line {lineno}: twists length "
                                        "must match rank")
                spec = ("free", rank, twists)
            elif mtype in ("cyclic_quotient", "dual", "regular"):
                if scen.ring is None:
                    raise ScenarioError(f"line {lineno}: module before "
                                        "any ring")
                rels = [parse_polynomial(g, scen.ring)
                        for g in _split_list(keys.get("relations", ""))]
                if not rels:
                    raise ScenarioError(f"line {lineno}: module needs "
                                        "relations")
                spec = (mtype, tuple(rels))
            else:
                raise ScenarioError(f"line {lineno}: module type must be "
                                    "free, cyclic_quotient, dual, or "
                                    "regular")
            scen.module_order.append(name)
            scen.modules[name] = spec
        elif kind == "check":
            _known_keys("check", keys, _CHECK_KEYS, lineno)
            if not names:
                raise ScenarioError(f"line {lineno}: check needs an "
                                    "identifier")
            check_id = names[0]
            if check_id not in scenarios.CHECKS:
                raise ScenarioError(f"line {lineno}: unknown check "
                                    f"{check_id!r}")
            entry = {"check": check_id}
            if len(names) > 1:
                entry["label"] = " ".join(names[1:])
            for key in ("name", "ideal", "aux", "module"):
                if key in keys:
                    entry[key] = keys[key]
            for key in ("t", "pd", "m_max", "seed", "question"):
                if key in keys:
                    entry[key] = int(keys[key])
            if "t_values" in keys:
                entry["t_values"] = tuple(
                    int(t) for t in _split_list(keys["t_values"]))
            for key in ("ideal", "aux"):
                if key in entry and entry[key] not in scen.ideals:
                    raise ScenarioError(f"line {lineno}: unknown ideal "
                                        f"{entry[key]!r}")
            if "module" in entry and entry["module"] not in scen.modules:
                raise ScenarioError(f"line {lineno}: unknown module "
                                    f"{entry['module']!r}")
            scen.checks.append(entry)
        else:
            raise ScenarioError(f"line {lineno}: unknown section kind "
                                f"{kind!r}")
    return scen


def _section_name(names, kind: str, lineno: int) -> str:
    if len(names) != 1:
        raise ScenarioError(f"line {lineno}: {kind} section needs exactly "
                            "one name")
    return names[0]


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e.strerror}")


# ---------------------------------------------------------------------------
# reports


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def input_digest(parts: dict) -> str:
    payload = canonical_json(parts).encode("utf-8")
    return "sha256:" + hashlib.sha256(payload).hexdigest()


def report_document(outcomes, summary: dict, digest: str) -> dict:
    return {"version": __version__,
            "inputs": {"digest": digest},
            "outcomes": [o.record() for o in outcomes],
            "summary": summary}


def render_text_report(doc: dict) -> str:
    lines = []
    width_check = max([len(o["check"]) for o in doc["outcomes"]] + [5])
    width_name = max([len(o["instance"]) for o in doc["outcomes"]] + [8])
    for o in doc["outcomes"]:
        kind = o["certificate"].get("kind", "?")
        lines.append(f"{o['check']:<{width_check}}  "
                     f"{o['instance']:<{width_name}}  "
                     f"{o['status']:<12}  {kind}")
    s = doc["summary"]
    lines.append(f"summary: verified={s['verified']} refuted={s['refuted']} "
                 f"inconclusive={s['inconclusive']}")
    for item in s.get("theorem_refutations", []):
        lines.append(f"REFUTED THEOREM: {item}")
    return "\n".join(lines)


def report_exit_code(summary: dict) -> int:
    if summary.get("theorem_refutations"):
        return 3
    if summary.get("inconclusive"):
        return 2
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


_GLOBAL_DEFAULTS = {"field": "q", "order": "grevlex", "fmt": "text",
                    "jobs": 1, "timeout": None, "seed": 0}


def _add_global_options(ap, suppress: bool) -> None:
    # registered on the main parser with real defaults and on every
    # subparser with suppressed ones, so the flags work in either position
    def dflt(key):
        return argparse.SUPPRESS if suppress else _GLOBAL_DEFAULTS[key]

    ap.add_argument("--field", default=dflt("field"),
                    help="coefficient field: q or fp:<prime>")
    ap.add_argument("--order", default=dflt("order"),
                    choices=("grevlex", "lex", "glex"))
    ap.add_argument("--format", dest="fmt", default=dflt("fmt"),
                    choices=("text", "json"))
    ap.add_argument("--jobs", type=int, default=dflt("jobs"),
                    help="worker pool size for check/probe")
    ap.add_argument("--timeout", type=float, default=dflt("timeout"),
                    help="per-check wall-clock budget in seconds")
    ap.add_argument("--seed", type=int, default=dflt("seed"),
                    help="default starting seed for probe")


def build_parser() -> _ArgumentParser:
    ap = _ArgumentParser(prog="koszul-lab",
                         description="Exact Koszul homology, colon ideals, "
                                     "integral closure, and the theorem "
                                     "check suite.")
    _add_global_options(ap, suppress=False)
    parent = _ArgumentParser(add_help=False)
    _add_global_options(parent, suppress=True)
    sub = ap.add_subparsers(dest="command", metavar="command")

    def algebra(name, help_, poly_first=False, gens_help="generators"):
        p = sub.add_parser(name, help=help_, parents=[parent])
        if poly_first:
            p.add_argument("poly", help="the element, in the grammar")
        p.add_argument("gens", nargs="*", help=gens_help)
        p.add_argument("--vars", default=None,
                       help="comma-separated variable names")
        p.add_argument("--ideal", dest="ideal_ref", default=None,
                       metavar="FILE[:NAME]",
                       help="take ring and generators from a scenario file")
        return p

    algebra("gb", "reduced deterministic basis of an ideal")
    algebra("nf", "normal form of an element against an ideal",
            poly_first=True)
    algebra("syz", "presentation matrix of the generators and the ideal "
                   "of its entries")

    p = algebra("koszul", "differential-complex homology of the generators")
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--coefficients", default=None, metavar="MODULE",
                   help="named dual/regular module from the scenario file")

    p = algebra("closure", "integral-closure operations")
    p.add_argument("--monomial", action="store_true",
                   help="closure of a monomial ideal, exactly")
    p.add_argument("--member", default=None, metavar="POLY",
                   help="test one element against the closure")
    p.add_argument("--mmax", type=int, default=10,
                   help="largest membership witness explored")
    p.add_argument("--fractional", default=None, metavar="A/B",
                   help="test element^B against the closure of ideal^A")

    p = algebra("colon", "colon of the ideal by a second ideal")
    p.add_argument("--by", required=True,
                   help="comma-separated generators of the divisor ideal")

    p = algebra("tor", "derived tensor homology of two quotients")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--module", default=None, metavar="NAME",
                   help="named module from the scenario file (default: "
                        "quotient by the ideal itself)")

    p = algebra("resolve", "minimal graded free resolution")
    p.add_argument("--max-length", type=int, default=6, dest="max_length")
    p.add_argument("--module", default=None, metavar="NAME",
                   help="resolve a named module instead of the quotient")

    p = sub.add_parser("examples", help="bundled worked examples",
                       parents=[parent])
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?", default=None)

    p = sub.add_parser("check", help="run the checks in a scenario file",
                       parents=[parent])
    p.add_argument("file")

    p = sub.add_parser("probe", help="run open-question probes on seeded "
                                     "random instances", parents=[parent])
    p.add_argument("--question", type=int, choices=(1, 2), required=True)
    p.add_argument("--seeds", default=None,
                   help="comma list of seed indices, or a start index")
    p.add_argument("--count", type=int, default=20)

    return ap


def _file_sha(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _digest_for(args, files: Sequence[str] = ()) -> str:
    parts = {"argv": list(args._argv),
             "files": {path: _file_sha(path) for path in sorted(files)}}
    return input_digest(parts)


def _emit_result(args, text_lines, result: dict, files=()) -> None:
    if args.fmt == "json":
        doc = {"version": __version__,
               "inputs": {"digest": _digest_for(args, files)},
               "result": result}
        sys.stdout.write(canonical_json(doc))
    else:
        for line in text_lines:
            print(line)


def _context_ring(args, varnames) -> Ring:
    return Ring(tuple(varnames), parse_field(args.field),
                make_order(args.order))


def _resolve_input(args):
    """(scenario or None, ideal handle, list of files read)."""
    if args.ideal_ref:
        path, _, name = args.ideal_ref.partition(":")
        scen = load_scenario(path)
        return scen, scen.ideal(name), [path]
    if args.vars is None:
        if getattr(args, "gens", None):
            raise _UsageError("generators need --vars or --ideal")
        return None, None, []
    ring = _context_ring(args, [v for v in _split_list(args.vars)])
    gens = [parse_polynomial(g, ring) for g in args.gens]
    return None, ideal(ring, gens), []


def _require_handle(args):
    scen, handle, files = _resolve_input(args)
    if handle is None:
        raise _UsageError("this command needs --ideal or --vars")
    return scen, handle, files


def _basis_lines(i: IdealHandle) -> list:
    return [print_polynomial(g) for g in i.preimage_polys()]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_gb(args) -> int:
    scen, handle, files = _resolve_input(args)
    if handle is None:
        _emit_result(args, [], {"basis": []}, files)
        return 0
    basis = _basis_lines(handle)
    _emit_result(args, basis, {"basis": basis}, files)
    return 0


def _cmd_nf(args) -> int:
    scen, handle, files = _require_handle(args)
    p = parse_polynomial(args.poly, handle.ring)
    reduced = handle.normal_form(p)
    text = print_polynomial(reduced)
    _emit_result(args, [text], {"normal_form": text}, files)
    return 0


def _cmd_syz(args) -> int:
    scen, handle, files = _require_handle(args)
    from .koszul import presentation_and_content
    gens = list(handle.minimal_generators())
    phi, content = presentation_and_content(gens, handle.ring)
    columns = []
    for col in phi.columns:
        columns.append([print_polynomial(col.coordinate(i))
                        for i in range(phi.target_rank)])
    lines = ["generators:"]
    lines += ["  " + print_polynomial(g) for g in gens]
    lines.append("syzygy columns:")
    for col in columns:
        lines.append("  (" + ", ".join(col) + ")")
    lines.append("entry ideal:")
    lines += ["  " + t for t in _basis_lines(content)]
    result = {"generators": [print_polynomial(g) for g in gens],
              "columns": columns, "entry_ideal": _basis_lines(content)}
    _emit_result(args, lines, result, files)
    return 0


def _cmd_koszul(args) -> int:
    scen, handle, files = _require_handle(args)
    gens = list(handle.minimal_generators())
    if args.coefficients:
        if scen is None:
            raise _UsageError("--coefficients needs --ideal FILE")
        if args.index is None:
            raise _UsageError("--coefficients needs --index")
        module = scen.action_module(args.coefficients)
        record = homology_with_coefficients(gens, module, args.index)
        lines = [f"H_{record.index} dimension {record.dimension}"]
        result = {"index": record.index, "dimension": record.dimension,
                  "vanishing": record.vanishing}
        _emit_result(args, lines, result, files)
        return 0
    k = build_koszul(gens, handle.ring)
    indices = [args.index] if args.index is not None else \
        list(range(1, k.n + 1))
    lines, rows = [], []
    for idx in indices:
        rec = k.homology(idx)
        if rec.vanishing:
            lines.append(f"H_{idx} = 0")
            rows.append({"index": idx, "vanishing": True,
                         "annihilator": None})
        else:
            basis = _basis_lines(rec.annihilator)
            lines.append(f"H_{idx} nonzero; annihilator:")
            lines += ["  " + t for t in basis]
            rows.append({"index": idx, "vanishing": False,
                         "annihilator": basis})
    _emit_result(args, lines, {"homology": rows}, files)
    return 0


def _cmd_closure(args) -> int:
    scen, handle, files = _require_handle(args)
    chosen = sum(1 for flag in (args.monomial, args.member) if flag)
    if args.fractional and not args.member:
        raise _UsageError("--fractional needs --member")
    if chosen != 1:
        raise _UsageError("choose exactly one of --monomial or --member")
    if args.monomial:
        closed = closure_mod.monomial_closure(handle)
        basis = _basis_lines(closed)
        _emit_result(args, basis, {"closure": basis}, files)
        return 0
    c = parse_polynomial(args.member, handle.ring)
    if args.fractional:
        num, slash, den = args.fractional.partition("/")
        if not slash or not num.strip().isdigit() \
                or not den.strip().isdigit():
            raise _UsageError("--fractional expects A/B with integers")
        a, b = int(num), int(den)
        if b == 0:
            raise _UsageError("--fractional denominator must be positive")
        v = closure_mod.fractional_membership(c, handle, a, b, args.mmax)
        label = f"power {a}/{b}"
    else:
        v = closure_mod.is_integral_over(c, handle, args.mmax)
        label = "closure"
    result = {"status": v.status}
    if v.status == "member":
        lines = [f"member of the {label} (witness {v.witness})"]
        result["witness"] = v.witness
    elif v.status == "non_member":
        normal = list(v.facet[0])
        lines = [f"not in the {label} (facet normal {normal}, "
                 f"rhs {v.facet[1]}, exponent "
                 f"{list(v.violating_exponent)})"]
        result["facet"] = {"normal": normal, "rhs": v.facet[1]}
        result["exponent"] = list(v.violating_exponent)
    else:
        lines = [f"inconclusive up to witness bound {v.bound}"]
        result["bound"] = v.bound
    _emit_result(args, lines, result, files)
    return 2 if v.status == "inconclusive" else 0


def _cmd_colon(args) -> int:
    scen, handle, files = _require_handle(args)
    divisor_gens = [parse_polynomial(g, handle.ring)
                    for g in _split_list(args.by)]
    quotient = colon(handle, ideal(handle.ring, divisor_gens))
    basis = _basis_lines(quotient)
    _emit_result(args, basis, {"basis": basis}, files)
    return 0


def _module_for(args, scen, handle):
    if args.module:
        if scen is None:
            raise _UsageError("--module needs --ideal FILE")
        return scen.check_module(args.module)
    return handle


def _cmd_tor(args) -> int:
    scen, handle, files = _require_handle(args)
    module = _module_for(args, scen, handle)
    result_module = tor(module, handle, args.t)
    zero = result_module.is_zero_module()
    lines = [f"Tor_{args.t}: " + ("zero" if zero else "nonzero")]
    result = {"t": args.t, "zero": zero}
    if not zero:
        ann = module_annihilator(result_module)
        basis = [print_polynomial(g) for g in ann.preimage_polys()]
        lines.append("annihilator:")
        lines += ["  " + t for t in basis]
        result["annihilator"] = basis
    _emit_result(args, lines, result, files)
    return 0


def _cmd_resolve(args) -> int:
    scen, handle, files = _require_handle(args)
    module = _module_for(args, scen, handle)
    res = minimal_resolution(module, handle.ring,
                             max_length=args.max_length)
    lines, steps = [], []
    for t in range(0, res.length + 1):
        twists = list(res.twists[t]) if t < len(res.twists) else []
        lines.append(f"t={t}: rank {res.rank(t)}, twists "
                     f"({', '.join(str(d) for d in twists)})")
        steps.append({"t": t, "rank": res.rank(t), "twists": twists})
    if res.truncated:
        lines.append(f"truncated at length bound {res.bound}")
    result = {"length": res.length, "truncated": res.truncated,
              "steps": steps}
    _emit_result(args, lines, result, files)
    return 0


def _cmd_examples(args) -> int:
    if args.action == "list":
        lines, rows = [], []
        for record in corpus.paper_examples():
            lines.append(f"{record.name}: {record.summary}")
            rows.append({"name": record.name, "summary": record.summary})
        _emit_result(args, lines, {"examples": rows})
        return 0
    if not args.name:
        raise _UsageError("examples run needs a name")
    record = corpus.example(args.name)
    verdicts = record.verify()
    lines = [f"{record.name}:"]
    for fact, ok in verdicts.items():
        lines.append(f"  {fact}: {'pass' if ok else 'FAIL'}")
    _emit_result(args, lines,
                 {"name": record.name, "facts": verdicts})
    return 0 if all(verdicts.values()) else 3


def _cmd_check(args) -> int:
    scen = load_scenario(args.file)
    tasks = scen.tasks()
    if not tasks:
        raise ScenarioError(f"{args.file} contains no check sections")
    outcomes, summary = scenarios.run_suite(tasks, jobs=args.jobs,
                                            timeout=args.timeout)
    doc = report_document(outcomes, summary, _digest_for(args, [args.file]))
    if args.fmt == "json":
        sys.stdout.write(canonical_json(doc))
    else:
        print(render_text_report(doc))
    return report_exit_code(summary)


def _cmd_probe(args) -> int:
    if args.seeds and "," in args.seeds:
        indices = [int(s) for s in _split_list(args.seeds)]
    else:
        start = int(args.seeds) if args.seeds else args.seed
        indices = list(range(start, start + args.count))
    if not indices:
        raise _UsageError("no seeds requested")
    pool = scenarios.surplus_generator_ideals(2, max(indices) + 1)
    tasks = []
    for index in indices:
        seed, handle = pool[index]
        inst = {"name": f"probe[q{args.question},seed={seed}]",
                "ideal": handle, "question": args.question}
        if args.question == 2:
            inst["seed"] = seed
        tasks.append(("C14", inst))
    outcomes, summary = scenarios.run_suite(tasks, jobs=args.jobs,
                                            timeout=args.timeout)
    doc = report_document(outcomes, summary, _digest_for(args))
    if args.fmt == "json":
        sys.stdout.write(canonical_json(doc))
    else:
        print(render_text_report(doc))
    return report_exit_code(summary)


_COMMANDS = {
    "gb": _cmd_gb,
    "nf": _cmd_nf,
    "syz": _cmd_syz,
    "koszul": _cmd_koszul,
    "closure": _cmd_closure,
    "colon": _cmd_colon,
    "tor": _cmd_tor,
    "resolve": _cmd_resolve,
    "examples": _cmd_examples,
    "check": _cmd_check,
    "probe": _cmd_probe,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_usage(sys.stderr)
            return 1
        args._argv = argv
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"koszul-lab: error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 0
    except (PolynomialSyntaxError, ScenarioError,
            scenarios.CheckRequirementError) as e:
        print(f"koszul-lab: error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"koszul-lab: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
