"""Geometric formulas and sequents over the predicates D (step), G
(reachability), T (path equivalence), evaluated in canonical models.

"Provable" here means valid in the canonical model: the system itself with D
as the edge relation, G its reflexive-transitive closure, and T path
equivalence.
"""

import itertools
import re
from dataclasses import dataclass

from .lts import (BudgetExceeded, ParseError, enumeration_budget,
                  path_equivalent, reachable_from)

PREDICATES = ("D", "G", "T")


# ---------------------------------------------------------------------------
# terms and formulas


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    state: str  # display name of a state

    def __str__(self):
        return "c_%s" % self.state


class GFormula:
    pass


@dataclass(frozen=True)
class Top(GFormula):
    def __str__(self):
        return "T"


@dataclass(frozen=True)
class Bot(GFormula):
    def __str__(self):
        return "F"


@dataclass(frozen=True)
class Atom(GFormula):
    pred: str
    left: object
    right: object

    def __str__(self):
        return "%s(%s,%s)" % (self.pred, self.left, self.right)


@dataclass(frozen=True)
class Eq(GFormula):
    left: object
    right: object

    def __str__(self):
        return "%s = %s" % (self.left, self.right)


@dataclass(frozen=True)
class And(GFormula):
    left: GFormula
    right: GFormula

    def __str__(self):
        return "(%s & %s)" % (self.left, self.right)


@dataclass(frozen=True)
class Or(GFormula):
    parts: tuple

    def __str__(self):
        if not self.parts:
            return "F"
        return "(%s)" % " | ".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Exists(GFormula):
    var: str
    body: GFormula

    def __str__(self):
        return "E %s. %s" % (self.var, self.body)


TOP = Top()
BOT = Bot()


def free_vars(phi):
    if isinstance(phi, (Top, Bot)):
        return set()
    if isinstance(phi, (Atom, Eq)):
        return {t.name for t in (phi.left, phi.right) if isinstance(t, Var)}
    if isinstance(phi, And):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Or):
        out = set()
        for p in phi.parts:
            out |= free_vars(p)
        return out
    if isinstance(phi, Exists):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(phi)


@dataclass(frozen=True)
class Sequent:
    context: tuple  # variable names
    antecedent: GFormula
    consequent: GFormula

    def __post_init__(self):
        fv = free_vars(self.antecedent) | free_vars(self.consequent)
        if not fv <= set(self.context):
            raise ValueError("free variables outside context: %s"
                             % sorted(fv - set(self.context)))

    def __str__(self):
        return "%s |- %s" % (self.antecedent, self.consequent)


# ---------------------------------------------------------------------------
# evaluation


def _term_value(G, term, env):
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, Const):
        return G.state(term.state)
    raise TypeError(term)


def eval_formula(G, phi, env):
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Atom):
        u = _term_value(G, phi.left, env)
        v = _term_value(G, phi.right, env)
        if phi.pred == "D":
            return G.has_edge(u, v)
        if phi.pred == "G":
            return v in reachable_from(G, u)
        if phi.pred == "T":
            return path_equivalent(G, u, v)
        raise ValueError("unknown predicate %s" % phi.pred)
    if isinstance(phi, Eq):
        return _term_value(G, phi.left, env) == _term_value(G, phi.right, env)
    if isinstance(phi, And):
        return eval_formula(G, phi.left, env) and eval_formula(G, phi.right, env)
    if isinstance(phi, Or):
        return any(eval_formula(G, p, env) for p in phi.parts)
    if isinstance(phi, Exists):
        for s in range(G.n):
            env2 = dict(env)
            env2[phi.var] = s
            if eval_formula(G, phi.body, env2):
                return True
        return False
    raise TypeError(phi)


def eval_sequent(G, sigma, budget=None):
    """True iff every assignment of the context variables makes the
    antecedent imply the consequent."""
    if budget is None:
        budget = enumeration_budget()
    k = len(sigma.context)
    if G.n ** k > budget:
        raise BudgetExceeded("assignment enumeration budget exceeded")
    for values in itertools.product(range(G.n), repeat=k):
        env = dict(zip(sigma.context, values))
        if eval_formula(G, sigma.antecedent, env):
            if not eval_formula(G, sigma.consequent, env):
                return False
    return True


# ---------------------------------------------------------------------------
# per-system theory


@dataclass(frozen=True)
class Theory:
    structural: tuple
    existence: tuple
    completeness: tuple
    negative: tuple
    domain_closure: tuple

    def all_sequents(self):
        return (self.structural + self.existence + self.completeness
                + self.negative + self.domain_closure)

    def __len__(self):
        return len(self.all_sequents())


def _structural_sequents():
    x, y, z = Var("x"), Var("y"), Var("z")
    return (
        # a step is a reachability
        Sequent(("x", "y"), Atom("D", x, y), Atom("G", x, y)),
        # reflexivity of reachability
        Sequent(("x",), TOP, Atom("G", x, x)),
        # transitivity
        Sequent(("x", "y", "z"), And(Atom("G", x, y), Atom("G", y, z)),
                Atom("G", x, z)),
        # path-equivalent states reach the same states
        Sequent(("x", "y", "z"), And(Atom("T", x, y), Atom("G", x, z)),
                Atom("G", y, z)),
        # symmetry of path equivalence
        Sequent(("x", "y"), Atom("T", x, y), Atom("T", y, x)),
        # path equivalence entails mutual reachability (one direction)
        Sequent(("x", "y"), Atom("T", x, y), Atom("G", x, y)),
    )


def generate_theory(M):
    x = Var("x")
    existence = tuple(
        Sequent((), TOP, Atom("D", Const(M.name_of(s)), Const(M.name_of(t))))
        for (s, a, t) in sorted(M.transitions))
    completeness = []
    for s in range(M.n):
        succ = M.successors(s)
        cons = Or(tuple(Eq(x, Const(M.name_of(t))) for t in succ))
        if not succ:
            cons = BOT
        completeness.append(
            Sequent(("x",), Atom("D", Const(M.name_of(s)), x), cons))
    negative = []
    for s in range(M.n):
        for t in range(M.n):
            if t not in reachable_from(M, s):
                negative.append(Sequent(
                    (), Atom("G", Const(M.name_of(s)), Const(M.name_of(t))), BOT))
            if not path_equivalent(M, s, t):
                negative.append(Sequent(
                    (), Atom("T", Const(M.name_of(s)), Const(M.name_of(t))), BOT))
    domain = (Sequent(("x",), TOP,
                      Or(tuple(Eq(x, Const(M.name_of(s)))
                               for s in range(M.n)))),)
    return Theory(_structural_sequents(), existence, tuple(completeness),
                  tuple(negative), domain)


# ---------------------------------------------------------------------------
# the four named sequents and the structural bridge


def named_sigma(name):
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    if name == "tot":
        return Sequent(("x",), TOP, Exists("y", Atom("D", x, y)))
    if name == "det":
        return Sequent(("x", "y", "z"),
                       And(Atom("D", x, y), Atom("D", x, z)), Eq(y, z))
    if name == "conf":
        return Sequent(("x", "y", "z"),
                       And(Atom("D", x, y), Atom("D", x, z)),
                       Exists("w", And(Atom("D", y, w), Atom("D", z, w))))
    if name == "loop":
        return Sequent(("x",), TOP, Atom("D", x, x))
    raise KeyError("unknown sigma: %s" % name)


SIGMA_NAMES = ("tot", "det", "conf", "loop")


def _structural_predicate(M, name):
    if name == "tot":
        return all(M.successors(s) for s in range(M.n))
    if name == "det":
        return all(len(M.successors(s)) <= 1 for s in range(M.n))
    if name == "conf":
        return all(any(M.has_edge(u, w) and M.has_edge(v, w)
                       for w in range(M.n))
                   for s in range(M.n)
                   for u in M.successors(s) for v in M.successors(s))
    if name == "loop":
        return all(M.has_edge(s, s) for s in range(M.n))
    raise KeyError(name)


def semantic_bridge_check(M):
    """Each named sequent must agree with its direct structural reading."""
    rows = {}
    for name in SIGMA_NAMES:
        ev = eval_sequent(M, named_sigma(name))
        st = _structural_predicate(M, name)
        rows[name] = {"eval": ev, "structural": st, "agree": ev == st}
    return rows


def topos_separation_certificate(M, N, extra=()):
    """First sequent from the named family (then user-supplied ones) on which
    the two canonical models disagree.  Absence only means 'not separated by
    the checked family'."""
    candidates = [(nm, named_sigma(nm)) for nm in SIGMA_NAMES]
    candidates += [(str(s), s) for s in extra]
    for (nm, sigma) in candidates:
        vm = eval_sequent(M, sigma)
        vn = eval_sequent(N, sigma)
        if vm != vn:
            return {"name": nm, "sequent": sigma,
                    "holds_in": "first" if vm else "second"}
    return None


# ---------------------------------------------------------------------------
# standard translation of diamond-only modal formulas


def standard_translation(phi, var="x", _counter=None):
    """ST_x: diamonds become existential step quantifiers.  Only single-label
    ("*") modalities translate; the geometric step predicate is unlabeled."""
    from . import hml
    if not hml.in_fragment(phi, "diamondOnly"):
        raise ValueError("formula outside the diamond-only fragment")
    if _counter is None:
        _counter = itertools.count()

    def st(phi, v):
        if isinstance(phi, hml.Top):
            return TOP
        if isinstance(phi, hml.Bot):
            return BOT
        if isinstance(phi, hml.And):
            return And(st(phi.left, v), st(phi.right, v))
        if isinstance(phi, hml.Or):
            return Or((st(phi.left, v), st(phi.right, v)))
        if isinstance(phi, hml.Diamond):
            if phi.label != "*":
                raise ValueError("only single-label modalities translate")
            fresh = "v%d" % next(_counter)
            return Exists(fresh, And(Atom("D", Var(v), Var(fresh)),
                                     st(phi.body, fresh)))
        raise TypeError(phi)

    return st(phi, var)


def is_equality_free(phi):
    if isinstance(phi, (Top, Bot, Atom)):
        return True
    if isinstance(phi, Eq):
        return False
    if isinstance(phi, And):
        return is_equality_free(phi.left) and is_equality_free(phi.right)
    if isinstance(phi, Or):
        return all(is_equality_free(p) for p in phi.parts)
    if isinstance(phi, Exists):
        return is_equality_free(phi.body)
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# sequent text syntax:  D(x,y) & D(x,z) |- y = z     (E w. ... for exists;
# identifiers starting with c_ are state constants)


_TOKEN = re.compile(r"\s*(\|-|\||&|\(|\)|=|\.|,|[A-Za-z_][A-Za-z_0-9]*)")


def parse_sequent(text):
    if "|-" not in text:
        raise ParseError("missing turnstile |-")
    left, right = text.split("|-", 1)
    ante = parse_gformula(left)
    cons = parse_gformula(right)
    ctx = tuple(sorted(free_vars(ante) | free_vars(cons)))
    return Sequent(ctx, ante, cons)


def parse_gformula(text):
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            if text[i:].strip():
                raise ParseError("bad input at %r" % text[i:])
            break
        tokens.append(m.group(1))
        i = m.end()
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take(expected=None):
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of sequent")
        if expected is not None and tok != expected:
            raise ParseError("expected %r, got %r" % (expected, tok))
        pos[0] += 1
        return tok

    def term(tok):
        if tok.startswith("c_"):
            return Const(tok[2:])
        return Var(tok)

    def parse_or():
        parts = [parse_and()]
        while peek() == "|":
            take()
            parts.append(parse_and())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def parse_and():
        left = parse_atomic()
        while peek() == "&":
            take()
            left = And(left, parse_atomic())
        return left

    def parse_atomic():
        tok = peek()
        if tok == "(":
            take()
            inner = parse_or()
            take(")")
            return inner
        if tok == "E":
            take()
            v = take()
            take(".")
            return Exists(v, parse_atomic())
        if tok in PREDICATES and pos[0] + 1 < len(tokens) \
                and tokens[pos[0] + 1] == "(":
            take()
            take("(")
            t1 = term(take())
            take(",")
            t2 = term(take())
            take(")")
            return Atom(tok, t1, t2)
        if tok == "T":
            take()
            return TOP
        if tok == "F":
            take()
            return BOT
        # bare term: must be an equality
        take()
        t1 = term(tok)
        take("=")
        t2 = term(take())
        return Eq(t1, t2)

    result = parse_or()
    if pos[0] != len(tokens):
        raise ParseError("trailing input in sequent")
    return result
