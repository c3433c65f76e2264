"""Text formats: graphs, instances, solutions, DIMACS CNF and gadget layouts.

Every writer starts with a versioned comment line.  Readers skip blank
lines and '#' comments (DIMACS uses 'c'), and report errors with the
1-based line number they occurred on.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import COMPLETE, DELETE, EDIT, VARIANTS, EditSet, Graph, GraphInputError
from .problem import TARGETS, Instance
from .reductions import CnfFormula, GadgetLayout, VariableGadget

GRAPH_HEADER = "# threshold-edit graph v1"
SOLUTION_HEADER = "# threshold-edit solution v1"
LAYOUT_HEADER = "# threshold-edit layout v1"
CNF_HEADER = "c threshold-edit cnf v1"
STATUSES = ("optimal", "feasible")


class ParseError(GraphInputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message} at line {line}")


def _content_lines(text: str, comment: str = "#"):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith(comment):
            yield no, line


def _ints(line: str, count: int, no: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"malformed {what}", no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"malformed {what}", no) from None


# --- graphs and instances ------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header")
    no, head = lines[0]
    n, m = _ints(head, 2, no, "header")
    if n < 0 or m < 0:
        raise ParseError("malformed header", no)
    seen = set()
    for no, line in lines[1:]:
        u, v = _ints(line, 2, no, "edge line")
        if u == v:
            raise ParseError("self-loop", no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError("vertex id out of range", no)
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise ParseError("duplicate edge", no)
        seen.add(pair)
    if len(seen) != m:
        raise ParseError(f"header announces {m} edges, found {len(seen)}", lines[0][0])
    return Graph.from_edges(n, seen)


def serialize_graph(g: Graph, comments: tuple[str, ...] = ()) -> str:
    out = [GRAPH_HEADER, *(f"# {c}" for c in comments), f"{g.n} {g.m}"]
    out += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def serialize_instance(inst: Instance) -> str:
    return serialize_graph(inst.graph, (f"instance k={inst.k} target={inst.target} variant={inst.variant}",))


def read_instance_meta(text: str) -> dict[str, str]:
    """Key-value pairs from a '# instance ...' comment, empty if none."""
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# instance "):
            return dict(item.split("=", 1) for item in line[len("# instance "):].split())
    return {}


def parse_instance(text: str, k: int | None = None, target: str | None = None,
                   variant: str | None = None) -> Instance:
    """Graph text plus instance metadata; explicit arguments win over the comment."""
    meta = read_instance_meta(text)
    g = parse_graph(text)
    if k is None:
        if "k" not in meta:
            raise ParseError("no budget given and no instance comment")
        k = int(meta["k"])
    return Instance(g, k, target or meta.get("target", "threshold"), variant or meta.get("variant", EDIT))


# --- solutions -------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionFile:
    k_used: int
    variant: str
    target: str
    status: str
    edits: tuple[tuple[str, int, int], ...]  # (sign, u, v) with u < v

    @classmethod
    def from_edits(cls, g: Graph, f: EditSet, target: str, variant: str,
                   status: str = "optimal") -> "SolutionFile":
        rows = tuple(("-" if g.has_edge(u, v) else "+", u, v) for u, v in f)
        return cls(len(rows), variant, target, status, rows)

    def edit_set(self) -> EditSet:
        return EditSet.of(((u, v) for _, u, v in self.edits), self.variant)

    def sign_problems(self, g: Graph) -> list[str]:
        out = []
        for sign, u, v in self.edits:
            if not (0 <= u < g.n and 0 <= v < g.n):
                out.append(f"pair {u} {v} out of range")
            elif (sign == "-") != g.has_edge(u, v):
                out.append(f"'{sign} {u} {v}' disagrees with the graph")
        return out


def serialize_solution(sol: SolutionFile) -> str:
    out = [SOLUTION_HEADER, f"{sol.k_used} {sol.variant} {sol.target} {sol.status}"]
    out += [f"{s} {u} {v}" for s, u, v in sol.edits]
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> SolutionFile:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing header")
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 4 or not parts[0].isdigit():
        raise ParseError("malformed header", no)
    k_used, variant, target, status = int(parts[0]), parts[1], parts[2], parts[3]
    if variant not in VARIANTS or target not in TARGETS or status not in STATUSES:
        raise ParseError("unknown variant, target or status", no)
    rows = []
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] not in "+-" or len(parts[0]) != 1:
            raise ParseError("malformed edit line", no)
        u, v = _ints(" ".join(parts[1:]), 2, no, "edit line")
        if u == v:
            raise ParseError("self-loop", no)
        if (parts[0] == "+" and variant == DELETE) or (parts[0] == "-" and variant == COMPLETE):
            raise ParseError(f"sign '{parts[0]}' not allowed for variant {variant}", no)
        rows.append((parts[0], min(u, v), max(u, v)))
    if len({(u, v) for _, u, v in rows}) != len(rows):
        raise ParseError("duplicate edit")
    if len(rows) != k_used:
        raise ParseError(f"header announces {k_used} edits, found {len(rows)}", lines[0][0])
    return SolutionFile(k_used, variant, target, status, tuple(sorted(rows, key=lambda r: r[1:])))


# --- DIMACS CNF -----------------------------------------------------------------


def parse_cnf(text: str) -> CnfFormula:
    lines = list(_content_lines(text, comment="c"))
    if not lines or not lines[0][1].startswith("p "):
        raise ParseError("missing 'p cnf' header", lines[0][0] if lines else None)
    no, head = lines[0]
    parts = head.split()
    if len(parts) != 4 or parts[1] != "cnf":
        raise ParseError("malformed 'p cnf' header", no)
    try:
        nv, nc = int(parts[2]), int(parts[3])
    except ValueError:
        raise ParseError("malformed 'p cnf' header", no) from None
    clauses, cur = [], []
    for no, line in lines[1:]:
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", no) from None
            if lit == 0:
                if not cur:
                    raise ParseError("empty clause", no)
                if len(cur) > 3:
                    raise ParseError(f"clause with {len(cur)} literals (at most 3 allowed)", no)
                clauses.append(tuple(cur))
                cur = []
            elif abs(lit) > nv:
                raise ParseError(f"literal {lit} out of range", no)
            else:
                cur.append(lit)
    if cur:
        raise ParseError("last clause not terminated by 0")
    if len(clauses) != nc:
        raise ParseError(f"header announces {nc} clauses, found {len(clauses)}", lines[0][0])
    return CnfFormula(nv, tuple(clauses))


def serialize_cnf(phi: CnfFormula) -> str:
    out = [CNF_HEADER, f"p cnf {phi.num_vars} {len(phi.clauses)}"]
    out += [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(out) + "\n"


# --- gadget layout sidecar ----------------------------------------------------------


def serialize_layout(layout: GadgetLayout) -> str:
    """Key-value lines: one key per line followed by integers."""
    phi = layout.formula
    out = [LAYOUT_HEADER, f"k {layout.k}", f"variables {phi.num_vars}"]
    out += ["formula_clause " + " ".join(map(str, c)) for c in phi.clauses]
    for x, gad in enumerate(layout.variables, start=1):
        out.append(f"variable {x} a {gad.a} b {gad.b} bot {gad.bot} top {gad.top} c {gad.c} d {gad.d}")
    out += [f"clause {i} {v}" for i, v in enumerate(layout.clause_vertices)]
    for prefix, members in layout.enforcement:
        out.append("enforce " + " ".join(map(str, prefix)) + " : " + " ".join(map(str, members)))
    out.append("isolated " + " ".join(map(str, layout.isolated)))
    return "\n".join(out) + "\n"


def parse_layout(text: str) -> GadgetLayout:
    k, nv = None, None
    clauses, gadgets, clause_vs, enforcement, isolated = [], [], [], [], ()
    for no, line in _content_lines(text):
        key, _, rest = line.partition(" ")
        try:
            if key == "k":
                k = int(rest)
            elif key == "variables":
                nv = int(rest)
            elif key == "formula_clause":
                clauses.append(tuple(int(t) for t in rest.split()))
            elif key == "variable":
                t = rest.split()
                roles = dict(zip(t[1::2], (int(x) for x in t[2::2])))
                gadgets.append(VariableGadget(**roles))
            elif key == "clause":
                clause_vs.append(int(rest.split()[1]))
            elif key == "enforce":
                left, _, right = rest.partition(":")
                enforcement.append((tuple(int(t) for t in left.split()), tuple(int(t) for t in right.split())))
            elif key == "isolated":
                isolated = tuple(int(t) for t in rest.split())
            else:
                raise ParseError(f"unknown key {key!r}", no)
        except (ValueError, TypeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed '{key}' entry", no) from None
    if k is None or nv is None:
        raise ParseError("layout lacks 'k' or 'variables'")
    return GadgetLayout(CnfFormula(nv, tuple(clauses)), tuple(gadgets), tuple(clause_vs),
                        tuple(enforcement), isolated, k)
