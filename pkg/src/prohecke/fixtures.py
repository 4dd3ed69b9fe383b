"""Fixture files: tabulated cohomology data with the relations to verify.

A fixture file holds one fixture:

    [fixture gl2.trivial] cite "GL2, trivial representation" group GL2
    external "description of an input taken from outside the library"
    params chi = char(1, 0, 2, 3) ; char(1, 0, 2, 2)    # or: params r = range(0, p)
    build
      ia = ind(abar)
    table H d 4
      0 = triv
      1 = triv + ia
    table K = H with chi := inv(chi) * abar
    expect
      poincare H
      iso dual(ia) ~ ia
    page
      cd = 9                                            # spectral page grammar
    end

Expressions: integers with + - * ^; p; characters char(exponents..., unramified
values...), one, abar, inv, conj, products and powers; modules triv, sign,
sign_star, zero, ss(r), ind(chi), radj(m), tmod(chi), tzero, dual(m),
twist(m, det(r, c)), sums and powers; ext(sub, quot, split); booleans eq, lt,
and, or, not, and if(cond, a, b).

Relations (one library operation each): poincare, shift, iso, dim, simple,
factors, ordinary, multiplicity, kunneth, vanish, page-facts, conflict.
"""
from __future__ import annotations

import itertools
import math
import operator
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable

from .algebra import HeckeAlgebraDescriptor
from .functors import LeviDatum, induce, right_adjoint
from .modules import (
    GroupCharacter,
    HeckeModule,
    ModuleError,
    SmoothCharacter,
    composition_factors,
    direct_sum,
    is_isomorphic,
    is_simple,
    make_character,
    make_dual,
    make_twist,
    power,
    same_factors,
    supersingular_gl2,
    supersingular_sl2,
    torus_module,
    zero_module,
)
from .spectral import (
    CheckResult,
    CohomologyTable,
    E2Page,
    Extension,
    compare_entries,
    consistent_multiplicities,
    dualizing_character,
    duality_shift_check,
    entry_dim,
    ordinary_check,
    parse_page,
    poincare_check,
    ss_propagate,
    torus_cohomology,
)

ENV_VAR = "PROHECKE_FIXTURES"
GROUP_DIMENSION = {"GL2": 4, "SL2": 3, "GL3": 9}


class FixtureError(ValueError):
    pass


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path(__file__).with_name("data")


# ------------------------------------------------------------- expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(:=|[()+\-*^,]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FixtureError(f"cannot read expression at {text[pos:]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


@dataclass(frozen=True)
class Node:
    op: str  # "int" | "name" | "call" | "+" | "-" | "*" | "^" | "neg"
    args: tuple = ()
    value: Any = None

    def __str__(self) -> str:
        if self.op == "int":
            return str(self.value)
        if self.op == "name":
            return self.value
        if self.op == "call":
            return f"{self.value}({', '.join(map(str, self.args))})"
        if self.op == "neg":
            return f"-{_paren(self.args[0])}"
        return f"{_paren(self.args[0])} {self.op} {_paren(self.args[1])}"


def _paren(n: Node) -> str:
    return str(n) if n.op in ("int", "name", "call") else f"({n})"


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise FixtureError(f"expected {want or 'a token'}, found {t!r}")
        self.i += 1
        return t

    def parse(self) -> Node:
        n = self.expr()
        if self.peek() is not None:
            raise FixtureError(f"trailing input {self.toks[self.i:]}")
        return n

    def expr(self) -> Node:
        n = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            n = Node(op, (n, self.term()))
        return n

    def term(self) -> Node:
        n = self.factor()
        while self.peek() == "*":
            self.take()
            n = Node("*", (n, self.factor()))
        return n

    def factor(self) -> Node:
        n = self.unary()
        if self.peek() == "^":
            self.take()
            n = Node("^", (n, self.unary()))
        return n

    def unary(self) -> Node:
        if self.peek() == "-":
            self.take()
            return Node("neg", (self.unary(),))
        return self.atom()

    def atom(self) -> Node:
        t = self.take()
        if t.isdigit():
            return Node("int", value=int(t))
        if t == "(":
            n = self.expr()
            self.take(")")
            return n
        if not re.match(r"[A-Za-z_]", t):
            raise FixtureError(f"unexpected {t!r}")
        if self.peek() == "(":
            self.take()
            args = []
            if self.peek() != ")":
                args.append(self.expr())
                while self.peek() == ",":
                    self.take()
                    args.append(self.expr())
            self.take(")")
            return Node("call", tuple(args), t)
        return Node("name", value=t)


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


class Context:
    """Evaluation environment for one group and prime."""

    def __init__(self, group: str, p: int, e: int = 1):
        self.group = group
        self.p = p
        if group in ("GL2", "SL2"):
            self.desc = HeckeAlgebraDescriptor.make(group, p, e)
            self.levi = LeviDatum.torus(self.desc)
            self.field = self.desc.field
            self.rank = self.levi.levi.datum.n
        else:
            self.desc = None
            self.levi = None
            self.field = None
            self.rank = 0
        self._memo: dict[tuple, Any] = {}

    def memo(self, key: tuple, fn: Callable[[], Any]) -> Any:
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def need_algebra(self) -> None:
        if self.desc is None:
            raise FixtureError(f"group {self.group} has no module constructors")


def _char_power(x: SmoothCharacter, k: int) -> SmoothCharacter:
    base = x if k >= 0 else x.inverse()
    out = SmoothCharacter.trivial(x.field, x.rank)
    for _ in range(abs(k)):
        out = out * base
    return out


_INT_OPS = {"+": operator.add, "-": operator.sub, "*": operator.mul, "^": operator.pow}


def evaluate(node: Node, env: dict[str, Any], ctx: Context) -> Any:
    ev = lambda n: evaluate(n, env, ctx)  # noqa: E731
    if node.op == "int":
        return node.value
    if node.op == "name":
        name = node.value
        if name in env:
            v = env[name]
            return evaluate(v, env, ctx) if isinstance(v, Node) else v
        return _constant(name, ctx)
    if node.op == "neg":
        v = ev(node.args[0])
        if isinstance(v, int):
            return -v
        raise FixtureError(f"cannot negate {node.args[0]}")
    if node.op in ("+", "-", "*", "^"):
        a, b = ev(node.args[0]), ev(node.args[1])
        if isinstance(a, int) and isinstance(b, int) and not isinstance(a, bool):
            if node.op == "^" and b < 0:
                raise FixtureError(f"negative integer exponent in {node}")
            return _INT_OPS[node.op](a, b)
        if node.op == "*" and isinstance(a, SmoothCharacter) and isinstance(b, SmoothCharacter):
            return a * b
        if node.op == "^" and isinstance(a, SmoothCharacter) and isinstance(b, int):
            return _char_power(a, b)
        if node.op == "+" and isinstance(a, HeckeModule) and isinstance(b, HeckeModule):
            return direct_sum([a, b])
        if node.op == "^" and isinstance(a, HeckeModule) and isinstance(b, int):
            return power(a, b)
        raise FixtureError(f"operator {node.op} does not apply to {node.args[0]} and {node.args[1]}")
    return _call(node.value, [ev(a) for a in node.args], ctx)


def _constant(name: str, ctx: Context) -> Any:
    if name == "p":
        return ctx.p
    if name in ("yes", "true"):
        return True
    if name in ("no", "false"):
        return False
    if name == "unknown":
        return None
    ctx.need_algebra()
    if name == "one":
        return SmoothCharacter.trivial(ctx.field, ctx.rank)
    if name == "abar":
        return dualizing_character(ctx.field, 2, special=(ctx.group == "SL2"))
    if name in ("triv", "sign", "sign_star"):
        return ctx.memo((name,), lambda: make_character(ctx.desc, name))
    if name == "zero":
        return zero_module(ctx.desc)
    if name == "tzero":
        return zero_module(ctx.levi.levi)
    raise FixtureError(f"unknown name {name!r}")


def _call(fn: str, args: list[Any], ctx: Context) -> Any:
    def want(n: int) -> None:
        if len(args) != n:
            raise FixtureError(f"{fn} takes {n} arguments, got {len(args)}")

    if fn == "range":
        want(2)
        return list(range(args[0], args[1]))
    if fn == "eq":
        want(2)
        return args[0] == args[1]
    if fn == "lt":
        want(2)
        return args[0] < args[1]
    if fn == "and":
        return all(args)
    if fn == "or":
        return any(args)
    if fn == "not":
        want(1)
        return not args[0]
    if fn == "if":
        want(3)
        return args[1] if args[0] else args[2]
    ctx.need_algebra()
    if fn == "char":
        if len(args) != 2 * ctx.rank:
            raise FixtureError(f"char takes {2 * ctx.rank} integers over {ctx.group}")
        return SmoothCharacter(ctx.field, tuple(args[: ctx.rank]), tuple(ctx.field(x) for x in args[ctx.rank:]))
    if fn == "inv":
        want(1)
        return args[0].inverse()
    if fn == "conj":
        want(1)
        return args[0].conjugate()
    if fn == "ind":
        want(1)
        return ctx.memo(("ind", args[0]), lambda: induce(ctx.levi, args[0]))
    if fn == "tmod":
        want(1)
        return torus_module(ctx.levi.levi, args[0])
    if fn == "radj":
        want(1)
        return right_adjoint(ctx.levi, args[0])
    if fn == "ss":
        want(1)
        r = args[0]
        if ctx.group == "GL2":
            return ctx.memo(("ss", r), lambda: supersingular_gl2(ctx.desc, r))
        return ctx.memo(("ss", r), lambda: supersingular_sl2(ctx.desc, r))
    if fn == "dual":
        want(1)
        return make_dual(args[0])
    if fn == "det":
        want(2)
        return GroupCharacter.det(ctx.desc.datum, ctx.field, r=args[0], c=ctx.field(args[1]))
    if fn == "twist":
        want(2)
        return make_twist(args[0], args[1])
    if fn == "pow":
        want(2)
        return power(args[0], args[1])
    if fn == "ext":
        want(3)
        return Extension(args[0], args[1], args[2])
    raise FixtureError(f"unknown function {fn!r}")


# ----------------------------------------------------------------- fixtures

@dataclass
class TableSpec:
    name: str
    d: int | None = None
    entries: dict[int, Node | None] = field(default_factory=dict)
    base: str | None = None
    rebind: tuple[str, Node] | None = None

    def to_text(self) -> str:
        if self.base is not None:
            return f"table {self.name} = {self.base} with {self.rebind[0]} := {self.rebind[1]}"
        lines = [f"table {self.name} d {self.d}"]
        for i, e in sorted(self.entries.items()):
            lines.append(f"  {i} = {'?' if e is None else e}")
        return "\n".join(lines)


@dataclass
class Relation:
    kind: str
    text: str  # normalized argument text
    when: Node | None = None  # checked only for instances where this holds

    def to_text(self) -> str:
        guard = f" when {self.when}" if self.when is not None else ""
        return f"  {self.kind} {self.text}{guard}".rstrip()


RELATIONS = ("poincare", "shift", "iso", "dim", "simple", "factors", "ordinary",
             "multiplicity", "kunneth", "vanish", "page-facts", "conflict")


@dataclass
class Fixture:
    id: str
    cite: str
    group: str
    externals: list[str] = field(default_factory=list)
    params: tuple[str, Node] | None = None
    build: list[tuple[str, Node]] = field(default_factory=list)
    tables: dict[str, TableSpec] = field(default_factory=dict)
    relations: list[Relation] = field(default_factory=list)
    page_text: str | None = None
    source: Path | None = None

    @property
    def page(self) -> E2Page | None:
        return parse_page(self.page_text) if self.page_text is not None else None

    def to_text(self) -> str:
        lines = [f'[fixture {self.id}] cite "{self.cite}" group {self.group}']
        for e in self.externals:
            lines.append(f'external "{e}"')
        if self.params is not None:
            lines.append(f"params {self.params[0]} = {self.params[1]}")
        if self.build:
            lines.append("build")
            for name, node in self.build:
                lines.append(f"  {name} = {node}")
        for t in self.tables.values():
            lines.append(t.to_text())
        if self.relations:
            lines.append("expect")
            lines += [r.to_text() for r in self.relations]
        if self.page_text is not None:
            lines.append("page")
            lines += ["  " + x for x in self.page_text.strip("\n").splitlines()]
        lines.append("end")
        return "\n".join(lines) + "\n"

    # -- parameter instances
    def instances(self, ctx: Context) -> list[dict[str, Any]]:
        if self.params is None:
            return [{}]
        name, node = self.params
        if node.op == "call" and node.value == "range":
            vals = evaluate(node, {}, ctx)
        elif node.op == "call" and node.value == "list":
            vals = [evaluate(a, {}, ctx) for a in node.args]
        else:
            vals = [evaluate(node, {}, ctx)]
        return [{name: v} for v in vals]

    def env(self, ctx: Context, binding: dict[str, Any]) -> dict[str, Any]:
        env: dict[str, Any] = dict(binding)
        for name, node in self.build:
            env[name] = node
        return env

    def table(self, name: str, ctx: Context, env: dict[str, Any]) -> CohomologyTable:
        tspec = self.tables.get(name)
        if tspec is None:
            raise FixtureError(f"{self.id}: unknown table {name!r}")
        if tspec.base is not None:
            var, node = tspec.rebind
            new_env = dict(env)
            new_env[var] = evaluate(node, env, ctx)
            t = self.table(tspec.base, ctx, new_env)
            return CohomologyTable(t.group, t.d, t.entries, name)
        entries = {}
        for i, node in tspec.entries.items():
            entries[i] = None if node is None else evaluate(node, env, ctx)
        return CohomologyTable(self.group, tspec.d, entries, name)

    def modules(self, ctx: Context) -> list[HeckeModule]:
        """Every module handle built by the fixture, over all parameter instances."""
        out: list[HeckeModule] = []
        for binding in self.instances(ctx):
            env = self.env(ctx, binding)
            for name in self.tables:
                t = self.table(name, ctx, env)
                for e in t.entries.values():
                    if isinstance(e, HeckeModule) and e.dim:
                        out.append(e)
                    elif isinstance(e, Extension):
                        out += [x for x in (e.sub, e.quot) if x.dim]
            for name, node in self.build:
                v = evaluate(node, env, ctx)
                if isinstance(v, HeckeModule) and v.dim and v.desc == ctx.desc:
                    out.append(v)
        return out


_HEADER = re.compile(r'^\[fixture ([\w.]+)\]\s+cite\s+"([^"]*)"\s+group\s+(\w+)$')


def parse_fixture(text: str, source: Path | None = None) -> Fixture:
    fx: Fixture | None = None
    block = None
    current_table: TableSpec | None = None
    page_lines: list[str] = []
    ended = False
    where = str(source) if source else "<text>"

    def fail(lineno: int, msg: str) -> FixtureError:
        return FixtureError(f"{where}:{lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw if block == "page" else raw.split("#", 1)[0]
        stripped = line.strip()
        if block == "page":
            if stripped == "end":
                ended = True
                block = None
                continue
            page_lines.append(stripped)
            continue
        if not stripped:
            continue
        if ended:
            raise fail(lineno, "content after end")
        if fx is None:
            m = _HEADER.match(stripped)
            if not m:
                raise fail(lineno, 'expected [fixture <id>] cite "<text>" group <tag>')
            fx = Fixture(m.group(1), m.group(2), m.group(3), source=source)
            continue
        head = stripped.split(None, 1)
        kw = head[0]
        rest = head[1] if len(head) > 1 else ""
        try:
            if kw == "external":
                m = re.match(r'^"([^"]*)"$', rest)
                if not m:
                    raise FixtureError('external takes a quoted string')
                fx.externals.append(m.group(1))
                block = None
            elif kw == "params":
                m = re.match(r"^(\w+)\s*=\s*(.+)$", rest)
                if not m:
                    raise FixtureError("expected params <name> = <values>")
                vals = [parse_expr(x) for x in m.group(2).split(";")]
                node = vals[0] if len(vals) == 1 else Node("call", tuple(vals), "list")
                fx.params = (m.group(1), node)
                block = None
            elif kw == "build" and not rest:
                block = "build"
            elif kw == "table":
                m = re.match(r"^(\w+)\s+d\s+(\d+)$", rest)
                m2 = re.match(r"^(\w+)\s*=\s*(\w+)\s+with\s+(\w+)\s*:=\s*(.+)$", rest)
                if m:
                    current_table = TableSpec(m.group(1), int(m.group(2)))
                elif m2:
                    current_table = TableSpec(m2.group(1), base=m2.group(2), rebind=(m2.group(3), parse_expr(m2.group(4))))
                else:
                    raise FixtureError("expected table <name> d <n> or table <name> = <base> with <var> := <expr>")
                if current_table.name in fx.tables:
                    raise FixtureError(f"duplicate table {current_table.name}")
                fx.tables[current_table.name] = current_table
                block = "table"
            elif kw == "expect" and not rest:
                block = "expect"
            elif kw == "page" and not rest:
                block = "page"
            elif kw == "end" and not rest:
                ended = True
                block = None
            elif block == "build":
                m = re.match(r"^(\w+)\s*=\s*(.+)$", stripped)
                if not m:
                    raise FixtureError("expected <name> = <expr>")
                fx.build.append((m.group(1), parse_expr(m.group(2))))
            elif block == "table":
                m = re.match(r"^(\d+)\s*=\s*(.+)$", stripped)
                if not m or current_table.base is not None:
                    raise FixtureError("expected <degree> = <expr>")
                i = int(m.group(1))
                if i > current_table.d:
                    raise FixtureError(f"degree {i} above d = {current_table.d}")
                current_table.entries[i] = None if m.group(2).strip() == "?" else parse_expr(m.group(2))
            elif block == "expect":
                fx.relations.append(_parse_relation(kw, rest))
            else:
                raise FixtureError(f"unexpected line {stripped!r}")
        except FixtureError as exc:
            raise fail(lineno, str(exc)) from None
    if fx is None:
        raise FixtureError(f"{where}: empty fixture file")
    if not ended:
        raise FixtureError(f"{where}: missing end")
    if page_lines:
        fx.page_text = "\n".join(page_lines) + "\n"
        parse_page(fx.page_text)
    _register_check(fx)
    return fx


def _parse_relation(kind: str, rest: str) -> Relation:
    if kind not in RELATIONS:
        raise FixtureError(f"unknown relation {kind!r}; the library checks {', '.join(RELATIONS)}")
    rest = re.sub(r"\s+", " ", rest.strip())
    when = None
    m = re.match(r'^(.*?) when ([^"]+)$', rest)
    if m:
        rest, when = m.group(1), parse_expr(m.group(2))
    rel = Relation(kind, rest, when)
    _relation_args(rel)  # validate the arguments now
    return rel


def _split_degrees(text: str) -> tuple[str, list[int] | None]:
    m = re.match(r"^(.*?)\s*\bdegrees\s+([\d ]+)$", text)
    if m:
        return m.group(1), [int(x) for x in m.group(2).split()]
    return text, None


def _relation_args(rel: Relation) -> dict[str, Any]:
    """Parse the argument text of a relation into a dictionary."""
    t = rel.text
    k = rel.kind
    if k in ("poincare", "shift"):
        t, degrees = _split_degrees(t)
        twist = None
        m = re.match(r"^(.*?)\s+twist\s+(.+)$", t)
        if m:
            t, twist = m.group(1), parse_expr(m.group(2))
        parts = t.split()
        if k == "poincare" and len(parts) == 1:
            return {"table": parts[0], "twist": twist, "degrees": degrees}
        if k == "shift" and len(parts) == 3 and parts[2].isdigit():
            return {"a": parts[0], "b": parts[1], "dim_p": int(parts[2]), "twist": twist, "degrees": degrees}
        raise FixtureError(f"bad {k} arguments {rel.text!r}")
    if k == "iso":
        if "~" not in t:
            raise FixtureError("iso expects <expr> ~ <expr>")
        a, b = t.split("~", 1)
        return {"a": parse_expr(a), "b": parse_expr(b)}
    if k == "dim":
        m = re.match(r"^(.+)=\s*(\d+)$", t)
        if not m:
            raise FixtureError("dim expects <expr> = <n>")
        return {"a": parse_expr(m.group(1)), "n": int(m.group(2))}
    if k == "simple":
        return {"a": parse_expr(t)}
    if k == "factors":
        if "=" not in t:
            raise FixtureError("factors expects <expr> = <expr>, ...")
        a, b = t.split("=", 1)
        return {"a": parse_expr(a), "factors": [parse_expr(x) for x in _split_top(b)]}
    if k == "ordinary":
        t, degrees = _split_degrees(t)
        parts = re.split(r"\s+(?=R\d+\s*=)", t)
        rows = {}
        for part in parts[1:]:
            m = re.match(r"^R(\d+)\s*=\s*(.+)$", part)
            if not m:
                raise FixtureError(f"bad ordinary row {part!r}")
            rows[int(m.group(1))] = parse_expr(m.group(2))
        return {"table": parts[0].strip(), "rows": rows, "degrees": degrees}
    if k == "multiplicity":
        m = re.match(r"^sub (.+) quot (.+) target (.+) candidates (\d+)\.\.(\d+) expect ([\d ,]+)$", t)
        if not m:
            raise FixtureError("multiplicity expects sub <e> quot <e> target <e> candidates a..b expect k[, k]")
        return {"sub": parse_expr(m.group(1)), "quot": parse_expr(m.group(2)), "target": parse_expr(m.group(3)),
                "candidates": range(int(m.group(4)), int(m.group(5)) + 1),
                "expect": [int(x) for x in re.split(r"[ ,]+", m.group(6).strip())]}
    if k == "kunneth":
        m = re.match(r"^(\w+) factor ([\d ]+) torus (\d+)$", t)
        if not m:
            raise FixtureError("kunneth expects <table> factor <dims> torus <rank>")
        return {"table": m.group(1), "dims": [int(x) for x in m.group(2).split()], "rank": int(m.group(3))}
    if k == "vanish":
        ids = t.split()
        if not ids:
            raise FixtureError("vanish expects fixture ids")
        return {"ids": ids}
    if k == "page-facts":
        m = re.match(r"^([\w,-]+)\s*=\s*(.*)$", t)
        if not m:
            raise FixtureError('page-facts expects <kinds> = "fact" | "fact" ...')
        facts = re.findall(r'"([^"]*)"', m.group(2))
        return {"kinds": m.group(1).split(","), "facts": facts}
    if k == "conflict":
        m = re.match(r"^(\w+)\s*=\s*(.*)$", t)
        if not m:
            raise FixtureError('conflict expects <assumption> = "source" | ...')
        return {"assumption": m.group(1), "sources": re.findall(r'"([^"]*)"', m.group(2))}
    raise FixtureError(f"unknown relation {k!r}")


def _split_top(text: str) -> list[str]:
    """Split on commas outside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return [x.strip() for x in out if x.strip()]


def _register_check(fx: Fixture) -> None:
    """Reject fixtures whose relations the library cannot check."""
    if not fx.cite:
        raise FixtureError(f"{fx.id}: every fixture needs a citation")
    if fx.group not in GROUP_DIMENSION:
        raise FixtureError(f"{fx.id}: unsupported group {fx.group}")
    for rel in fx.relations:
        args = _relation_args(rel)
        for key in ("table", "a", "b"):
            name = args.get(key)
            if rel.kind in ("poincare", "shift", "ordinary", "kunneth") and isinstance(name, str) and name not in fx.tables:
                raise FixtureError(f"{fx.id}: relation {rel.kind} names unknown table {name!r}")
        if rel.kind in ("page-facts", "conflict") and fx.page_text is None:
            raise FixtureError(f"{fx.id}: {rel.kind} needs a page block")
        if fx.group == "GL3" and rel.kind not in ("page-facts", "conflict"):
            raise FixtureError(f"{fx.id}: only page relations are checkable over GL3")
    for t in fx.tables.values():
        if t.base is not None and t.base not in fx.tables:
            raise FixtureError(f"{fx.id}: table {t.name} derives from unknown table {t.base}")


# --------------------------------------------------------------- registry

def registry(directory: Path | None = None) -> dict[str, Path]:
    """Fixture id -> file, generated by scanning the fixture directory."""
    directory = directory or fixture_dir()
    out = {}
    for path in sorted(directory.glob("*.fix")):
        head = path.read_text().lstrip().splitlines()[0].split("#", 1)[0].strip()
        m = _HEADER.match(head)
        if not m:
            raise FixtureError(f"{path}: missing fixture header")
        if m.group(1) in out:
            raise FixtureError(f"duplicate fixture id {m.group(1)}")
        out[m.group(1)] = path
    return out


@lru_cache(maxsize=None)
def _load_cached(path: str, mtime: float) -> Fixture:
    return parse_fixture(Path(path).read_text(), Path(path))


def load_fixture(fid: str) -> Fixture:
    reg = registry()
    if fid not in reg:
        raise FixtureError(f"unknown fixture {fid!r}; known: {', '.join(reg)}")
    path = reg[fid]
    return _load_cached(str(path), path.stat().st_mtime)


def resolve(ref: str, p: int = 5) -> Any:
    """Dotted lookup: '<fixture id>.h<i>' gives entry i of table H for the first parameter instance."""
    m = re.match(r"^(.+)\.([a-z])(\d+)$", ref)
    if not m or m.group(1) not in registry():
        return load_fixture(ref)
    fx = load_fixture(m.group(1))
    ctx = Context(fx.group, p)
    env = fx.env(ctx, fx.instances(ctx)[0])
    return fx.table(m.group(2).upper(), ctx, env)[int(m.group(3))]


# ------------------------------------------------------------- verification

@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str
    citation: str
    instance: str = ""


def _binding_text(binding: dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in binding.items())


def verify(fx: Fixture, p: int = 5, e: int = 1, enabled: tuple[str, ...] = (), seed: int = 0) -> list[Check]:
    """Run every relation of the fixture over every parameter instance."""
    ctx = Context(fx.group, p, e)
    out: list[Check] = []
    for binding in fx.instances(ctx):
        env = fx.env(ctx, binding)
        inst = _binding_text(binding)
        for rel in fx.relations:
            if rel.when is not None and not evaluate(rel.when, env, ctx):
                continue
            try:
                results = _run_relation(fx, rel, ctx, env, enabled, seed)
            except (FixtureError, ModuleError) as exc:
                raise FixtureError(f"{fx.id} [{inst}] {rel.kind} {rel.text}: {exc}") from exc
            for r in results:
                out.append(Check(r.name, r.status, r.detail, fx.cite, inst))
    return out


def _table_entry_module(e) -> HeckeModule | None:
    if isinstance(e, HeckeModule):
        return e
    if isinstance(e, Extension):
        return e.module()
    return None


def _run_relation(fx: Fixture, rel: Relation, ctx: Context, env: dict, enabled, seed) -> list[CheckResult]:
    args = _relation_args(rel)
    k = rel.kind
    ev = lambda n: evaluate(n, env, ctx)  # noqa: E731
    label = f"{k} {rel.text}"
    if k == "poincare":
        t = fx.table(args["table"], ctx, env)
        xi = ev(args["twist"]) if args["twist"] is not None else None
        res = poincare_check(t, xi, seed)
        if args["degrees"] is not None:
            res = [r for i, r in enumerate(res) if i in args["degrees"]]
        return [CheckResult(f"{args['table']}: {r.name}", r.status, r.detail) for r in res]
    if k == "shift":
        a, b = fx.table(args["a"], ctx, env), fx.table(args["b"], ctx, env)
        xi = ev(args["twist"]) if args["twist"] is not None else None
        res = duality_shift_check((a, b), args["dim_p"], xi, seed)
        if args["degrees"] is not None:
            res = [r for i, r in enumerate(res) if i in args["degrees"]]
        return res
    if k == "iso":
        a, b = ev(args["a"]), ev(args["b"])
        status, detail = compare_entries(a, b, seed)
        return [CheckResult(label, status, detail)]
    if k == "dim":
        d = entry_dim(ev(args["a"]))
        ok = d == args["n"]
        return [CheckResult(label, "pass" if ok else "fail", f"dimension {d}")]
    if k == "simple":
        ok = is_simple(ev(args["a"]))
        return [CheckResult(label, "pass" if ok else "fail", "simple" if ok else "has a proper submodule")]
    if k == "factors":
        got = composition_factors(ev(args["a"]), budget=8)
        want = [ev(x) for x in args["factors"]]
        ok = same_factors(got, want, ordered=True)
        return [CheckResult(label, "pass" if ok else "fail", f"{len(got)} factors in order" if ok else "factors differ")]
    if k == "ordinary":
        t = fx.table(args["table"], ctx, env)
        rows = {j: ev(n) for j, n in args["rows"].items()}
        rows = {j: m for j, m in rows.items() if m.dim}
        return ordinary_check(ctx.levi, rows, t, args["degrees"])
    if k == "multiplicity":
        ks = consistent_multiplicities(ctx.levi, ev(args["sub"]), ev(args["quot"]), args["candidates"], ev(args["target"]))
        ok = ks == args["expect"]
        return [CheckResult(label, "pass" if ok else "fail", f"consistent multiplicities {ks}")]
    if k == "kunneth":
        t = fx.table(args["table"], ctx, env)
        dims = [entry_dim(t[i]) for i in range(t.d + 1)]
        torus = [torus_cohomology(args["rank"], j) for j in range(args["rank"] + 1)]
        conv = [sum(args["dims"][i] * torus[n - i] for i in range(len(args["dims"])) if 0 <= n - i < len(torus))
                for n in range(t.d + 1)]
        ok = dims == conv
        return [CheckResult(label, "pass" if ok else "fail", f"table dims {dims}, product dims {conv}")]
    if k == "vanish":
        out = []
        for fid in args["ids"]:
            other = load_fixture(fid)
            octx = Context(other.group, ctx.p)
            top = GROUP_DIMENSION[other.group]
            for binding in other.instances(octx):
                t = other.table("H", octx, other.env(octx, binding))
                d = entry_dim(t[top]) if t.d >= top else 0
                name = f"{fid} [{_binding_text(binding)}] H^{top} = 0"
                out.append(CheckResult(name, "pass" if d == 0 else "fail", f"recorded dimension {d}"))
        return out
    if k == "page-facts":
        res = ss_propagate(fx.page, enabled=enabled)
        if not res.consistent:
            return [CheckResult(label, "fail", "contradiction; minimal conflicting set: " + " | ".join(res.conflict))]
        got = res.fact_texts(args["kinds"])
        want = set(args["facts"])
        ok = got == want
        detail = "; ".join(sorted(got)) if ok else f"got {sorted(got)}, expected {sorted(want)}"
        return [CheckResult(label, "pass" if ok else "fail", detail)]
    if k == "conflict":
        res = ss_propagate(fx.page, enabled=tuple(enabled) + (args["assumption"],))
        if res.consistent:
            return [CheckResult(label, "fail", "no contradiction")]
        ok = sorted(res.conflict) == sorted(args["sources"])
        return [CheckResult(label, "pass" if ok else "fail", "minimal conflicting set: " + " | ".join(res.conflict))]
    raise FixtureError(f"unknown relation {k}")


def all_fixtures() -> list[Fixture]:
    return [load_fixture(fid) for fid in registry()]
