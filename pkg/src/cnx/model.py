"""Finite bi-valuational Kripke models, frame-class validation, named
fixtures, and the line-oriented model file format.

A model stores two hereditary valuations (one for verification, one for
falsification) over a preordered world set, plus an accessibility component
whose shape depends on the kind: none (prop), a binary relation (modal), or
a map from bi-set indices to binary relations (cond).  Conditional access is
sparse: unlisted indices denote the empty relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ModelFormatError, StructuralError, UnknownFixture


class Kind(Enum):
    PROP = "prop"
    MODAL = "modal"
    COND = "cond"


class FrameClass(Enum):
    P = "P"
    FSM = "FSM"
    FSC = "FSC"
    FSC_R = "FSC_R"

    @property
    def kind(self) -> Kind:
        return {
            FrameClass.P: Kind.PROP,
            FrameClass.FSM: Kind.MODAL,
            FrameClass.FSC: Kind.COND,
            FrameClass.FSC_R: Kind.COND,
        }[self]


@dataclass(frozen=True, order=True)
class BiSet:
    pos: frozenset[str]
    neg: frozenset[str]

    def __iter__(self):
        yield self.pos
        yield self.neg

    def swap(self) -> "BiSet":
        return BiSet(self.neg, self.pos)


def bi(pos, neg) -> BiSet:
    return BiSet(frozenset(pos), frozenset(neg))


def _sorted_pairs(pairs):
    return sorted(pairs)


class KripkeModel:
    """Immutable after construction; evaluation caches live on the instance.

    Construction checks structure only (every referenced id resolves into the
    world set); preorder axioms, valuation heredity and frame conditions are
    the business of validate_model.
    """

    def __init__(self, kind, worlds, leq, access=None, val_pos=None, val_neg=None):
        self.kind = kind
        self.worlds = frozenset(worlds)
        self.leq = frozenset(tuple(p) for p in leq)
        self.val_pos = {a: frozenset(ws) for a, ws in (val_pos or {}).items()}
        self.val_neg = {a: frozenset(ws) for a, ws in (val_neg or {}).items()}

        if not self.worlds:
            raise StructuralError("a model needs at least one world")
        for w in self.worlds:
            if not w or any(ch.isspace() for ch in w):
                raise StructuralError(f"bad world id {w!r}")
        for (w, v) in self.leq:
            if w not in self.worlds or v not in self.worlds:
                raise StructuralError(f"leq pair ({w},{v}) mentions unknown world")
        for val in (self.val_pos, self.val_neg):
            for a, ws in val.items():
                if not ws <= self.worlds:
                    raise StructuralError(f"valuation of p{a} mentions unknown world")

        if kind == Kind.PROP:
            if access:
                raise StructuralError("prop models carry no accessibility relation")
            self.access = None
        elif kind == Kind.MODAL:
            self.access = frozenset(tuple(p) for p in (access or ()))
            for (w, v) in self.access:
                if w not in self.worlds or v not in self.worlds:
                    raise StructuralError(f"r pair ({w},{v}) mentions unknown world")
        elif kind == Kind.COND:
            acc = {}
            for idx, pairs in (access or {}).items():
                idx = BiSet(frozenset(idx.pos), frozenset(idx.neg))
                if not (idx.pos <= self.worlds and idx.neg <= self.worlds):
                    raise StructuralError("index bi-set mentions unknown world")
                ps = frozenset(tuple(p) for p in pairs)
                for (w, v) in ps:
                    if w not in self.worlds or v not in self.worlds:
                        raise StructuralError(f"r triple ({w},...,{v}) mentions unknown world")
                if ps:
                    acc[idx] = ps
            self.access = acc
        else:
            raise StructuralError(f"unknown model kind {kind!r}")

        self._finish_init()

    def _finish_init(self):
        # absent atom == empty valuation; keep one canonical representation
        self.val_pos = {a: ws for a, ws in self.val_pos.items() if ws}
        self.val_neg = {a: ws for a, ws in self.val_neg.items() if ws}
        self._up = {w: frozenset(v for (u, v) in self.leq if u == w)
                    for w in self.worlds}
        self._biext_cache = {}

    # -- small accessors -----------------------------------------------------
    def up(self, w: str) -> frozenset[str]:
        """Worlds v with w <= v (as listed; validation guarantees w is included)."""
        return self._up[w]

    def val(self, atom: int, sign: str) -> frozenset[str]:
        table = self.val_pos if sign == "+" else self.val_neg
        return table.get(atom, frozenset())

    def slice_at(self, idx: BiSet) -> frozenset[tuple[str, str]]:
        """Conditional accessibility at a bi-set index; absent index = empty."""
        if self.kind is not Kind.COND:
            raise StructuralError("slice_at only applies to cond models")
        return self.access.get(idx, frozenset())

    def atoms(self) -> frozenset[int]:
        return frozenset(self.val_pos) | frozenset(self.val_neg)

    def __repr__(self):
        return f"<KripkeModel {self.kind.value} |W|={len(self.worlds)}>"


def _trusted_model(kind, worlds, leq, access, val_pos, val_neg) -> KripkeModel:
    """Construction fast path for generators whose output is sound by
    construction; fields must already be normalized (frozensets throughout,
    conditional access keyed by BiSet with nonempty frozenset values)."""
    m = object.__new__(KripkeModel)
    m.kind = kind
    m.worlds = worlds
    m.leq = leq
    m.access = access
    m.val_pos = val_pos
    m.val_neg = val_neg
    m._finish_init()
    return m


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    point: str

    def __post_init__(self):
        if self.point not in self.model.worlds:
            raise StructuralError(f"point {self.point!r} not a world of the model")


# ---------------------------------------------------------------------------
# frame-class validation

@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


def _fs_violations(worlds, leq, rel, tag=""):
    """Fischer-Servi completion checks for one binary relation.

    c1: w <= w' and w R v imply some v' with w' R v' and v <= v'.
    c2: w R v and v <= v' imply some w' with w <= w' and w' R v'.
    """
    out = []
    for (w, wp) in leq:
        for (u, v) in rel:
            if u != w:
                continue
            if not any((wp, vp) in rel and (v, vp) in leq for vp in worlds):
                out.append(Violation(
                    "c1", f"{tag}no completion for {w}<={wp} and r({w},{v})"))
    for (u, v) in rel:
        for (x, vp) in leq:
            if x != v:
                continue
            if not any((u, wp) in leq and (wp, vp) in rel for wp in worlds):
                out.append(Violation(
                    "c2", f"{tag}no completion for r({u},{v}) and {v}<={vp}"))
    return out


def validate_model(m: KripkeModel, cls: FrameClass) -> ValidationReport:
    """Check kind/class pairing, preorder axioms, valuation heredity, and the
    per-relation Fischer-Servi conditions (plus the reflexivity-of-@>
    condition for FSC_R).  Deterministic; violations name their witnesses."""
    out = []
    if m.kind is not cls.kind:
        out.append(Violation("kind-mismatch",
                             f"model kind {m.kind.value} does not pair with class {cls.value}"))
        return ValidationReport(False, tuple(out))

    for w in sorted(m.worlds):
        if (w, w) not in m.leq:
            out.append(Violation("not-reflexive", f"missing {w}<={w}"))
    for (a, b) in _sorted_pairs(m.leq):
        for (c, d) in _sorted_pairs(m.leq):
            if b == c and (a, d) not in m.leq:
                out.append(Violation("not-transitive",
                                     f"{a}<={b} and {b}<={d} but not {a}<={d}"))

    for sign, table in (("+", m.val_pos), ("-", m.val_neg)):
        for atom in sorted(table):
            ws = table[atom]
            for (a, b) in _sorted_pairs(m.leq):
                if a in ws and b not in ws:
                    out.append(Violation(
                        "heredity", f"val{sign} p{atom} holds at {a} but not at {b}>={a}"))

    if m.kind is Kind.MODAL:
        out.extend(_fs_violations(m.worlds, m.leq, m.access))
    elif m.kind is Kind.COND:
        for idx in sorted(m.access):
            rel = m.access[idx]
            tag = f"index ({set(idx.pos) or '{}'},{set(idx.neg) or '{}'}): "
            out.extend(_fs_violations(m.worlds, m.leq, rel, tag))
            if cls is FrameClass.FSC_R:
                for (w, v) in _sorted_pairs(rel):
                    if v not in idx.pos:
                        out.append(Violation(
                            "refl-target",
                            f"{tag}target {v} of r({w},{v}) outside the positive index component"))
    return ValidationReport(not out, tuple(out))


def close_valuations(m: KripkeModel) -> KripkeModel:
    """Upward-close both valuations along the reachability of leq."""
    reach = {w: {w} for w in m.worlds}
    changed = True
    while changed:
        changed = False
        for (a, b) in m.leq:
            for w, ws in reach.items():
                if a in ws and b not in ws:
                    ws.add(b)
                    changed = True

    def closed(table):
        return {a: frozenset().union(*(reach[w] for w in ws)) if ws else frozenset()
                for a, ws in table.items()}

    return KripkeModel(m.kind, m.worlds, m.leq, _copy_access(m),
                       closed(m.val_pos), closed(m.val_neg))


def _copy_access(m: KripkeModel):
    if m.kind is Kind.PROP:
        return None
    if m.kind is Kind.MODAL:
        return m.access
    return dict(m.access)


# ---------------------------------------------------------------------------
# fixtures (p -> atom 0, q -> atom 1; "all other atoms empty on both signs")

_TRIV_ATOMS = range(8)


def _fixtures() -> dict[str, PointedModel]:
    W0 = {"w"}
    refl0 = {("w", "w")}
    m0_vals = dict(val_pos={0: W0, 1: W0}, val_neg={0: set(), 1: W0})
    f = {}

    f["M0"] = KripkeModel(Kind.PROP, W0, refl0, **m0_vals)

    W1 = {"w", "v"}
    leq1 = {("w", "w"), ("v", "v"), ("w", "v")}
    m1_vals = dict(val_pos={0: W1, 1: {"v"}}, val_neg={0: {"v"}, 1: set()})
    f["M1"] = KripkeModel(Kind.PROP, W1, leq1, **m1_vals)

    f["triv"] = KripkeModel(Kind.PROP, W0, refl0,
                            val_pos={a: W0 for a in _TRIV_ATOMS},
                            val_neg={a: W0 for a in _TRIV_ATOMS})

    f["M0m"] = KripkeModel(Kind.MODAL, W0, refl0, access={("w", "w")}, **m0_vals)
    f["M1m"] = KripkeModel(Kind.MODAL, W1, leq1,
                           access={("w", "w"), ("v", "v")}, **m1_vals)
    f["trivm"] = KripkeModel(Kind.MODAL, W0, refl0, access={("w", "w")},
                             val_pos={a: W0 for a in _TRIV_ATOMS},
                             val_neg={a: W0 for a in _TRIV_ATOMS})

    rr = frozenset({("w", "w")})
    f["M0c"] = KripkeModel(Kind.COND, W0, refl0,
                           access={bi(W0, ()): rr, bi(W0, W0): rr}, **m0_vals)
    f["M0c1"] = KripkeModel(Kind.COND, W0, refl0,
                            access={bi(W0, ()): rr, bi((), W0): rr}, **m0_vals)
    rr1 = frozenset({("w", "w"), ("v", "v")})
    f["M1c"] = KripkeModel(Kind.COND, W1, leq1,
                           access={bi(W1, W1): rr1}, **m1_vals)
    f["M2"] = KripkeModel(Kind.COND, W0, refl0, access={bi((), ()): rr})
    f["trivc"] = KripkeModel(Kind.COND, W0, refl0, access={bi(W0, W0): rr},
                             val_pos={a: W0 for a in _TRIV_ATOMS},
                             val_neg={a: W0 for a in _TRIV_ATOMS})

    return {name: PointedModel(m, "w") for name, m in f.items()}


_FIXTURES = None

FIXTURE_NAMES = ("M0", "M0m", "M0c", "M0c1", "M1", "M1m", "M1c", "M2",
                 "triv", "trivm", "trivc")

FIXTURE_CLASS = {
    "M0": FrameClass.P, "M1": FrameClass.P, "triv": FrameClass.P,
    "M0m": FrameClass.FSM, "M1m": FrameClass.FSM, "trivm": FrameClass.FSM,
    "M0c": FrameClass.FSC, "M0c1": FrameClass.FSC, "M1c": FrameClass.FSC,
    "M2": FrameClass.FSC, "trivc": FrameClass.FSC,
}


def get_fixture(name: str) -> PointedModel:
    global _FIXTURES
    if _FIXTURES is None:
        _FIXTURES = _fixtures()
    try:
        return _FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"no fixture named {name!r}; "
                             f"known: {', '.join(FIXTURE_NAMES)}") from None


# ---------------------------------------------------------------------------
# model file format

def serialize_model(m: KripkeModel, point: str | None = None) -> str:
    """Line-oriented text form; reflexive leq pairs are left implicit."""
    lines = [f"kind {m.kind.value}"]
    for w in sorted(m.worlds):
        lines.append(f"world {w}")
    for (a, b) in _sorted_pairs(m.leq):
        if a != b:
            lines.append(f"leq {a} {b}")
    if m.kind is Kind.MODAL:
        for (a, b) in _sorted_pairs(m.access):
            lines.append(f"r {a} {b}")
    elif m.kind is Kind.COND:
        entries = []
        for idx in m.access:
            for (a, b) in m.access[idx]:
                entries.append((sorted(idx.pos), sorted(idx.neg), a, b))
        for xs, ys, a, b in sorted(entries):
            lines.append(f"r {a} / {' '.join(xs)} ; {' '.join(ys)} / {b}")
    for tag, table in (("val+", m.val_pos), ("val-", m.val_neg)):
        for atom in sorted(table):
            if table[atom]:
                lines.append(f"{tag} p{atom} {' '.join(sorted(table[atom]))}")
    if point is not None:
        lines.append(f"point {point}")
    return "\n".join(lines) + "\n"


def serialize_pointed(pm: PointedModel) -> str:
    return serialize_model(pm.model, pm.point)


def load_model(text: str) -> tuple[KripkeModel, str | None]:
    """Parse the model file format.  Implied reflexive leq pairs are added;
    transitivity is not implied (validate_model reports it)."""
    kind = None
    worlds: list[str] = []
    leq = set()
    modal_r = set()
    cond_r: dict[BiSet, set] = {}
    val_pos: dict[int, set] = {}
    val_neg: dict[int, set] = {}
    point = None

    def atom_index(tok, ln):
        if not tok.startswith("p") or not tok[1:].isdigit():
            raise ModelFormatError(f"line {ln}: bad atom {tok!r}")
        return int(tok[1:])

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "kind":
            if len(parts) != 2 or parts[1] not in ("prop", "modal", "cond"):
                raise ModelFormatError(f"line {ln}: kind must be prop|modal|cond")
            kind = Kind(parts[1])
        elif head == "world":
            if len(parts) != 2:
                raise ModelFormatError(f"line {ln}: world takes one id")
            worlds.append(parts[1])
        elif head == "leq":
            if len(parts) != 3:
                raise ModelFormatError(f"line {ln}: leq takes two ids")
            leq.add((parts[1], parts[2]))
        elif head == "r":
            body = line[1:].strip()
            if "/" in body:
                pieces = [p.strip() for p in body.split("/")]
                if len(pieces) != 3 or ";" not in pieces[1]:
                    raise ModelFormatError(
                        f"line {ln}: cond r is 'r SRC / X ; Y / TGT'")
                src, mid, tgt = pieces
                xs_raw, ys_raw = (s.strip() for s in mid.split(";", 1))
                idx = bi(xs_raw.split(), ys_raw.split())
                cond_r.setdefault(idx, set()).add((src, tgt))
            else:
                if len(parts) != 3:
                    raise ModelFormatError(f"line {ln}: modal r takes two ids")
                modal_r.add((parts[1], parts[2]))
        elif head in ("val+", "val-"):
            if len(parts) < 2:
                raise ModelFormatError(f"line {ln}: {head} takes an atom")
            atom = atom_index(parts[1], ln)
            table = val_pos if head == "val+" else val_neg
            table.setdefault(atom, set()).update(parts[2:])
        elif head == "point":
            if len(parts) != 2:
                raise ModelFormatError(f"line {ln}: point takes one id")
            point = parts[1]
        else:
            raise ModelFormatError(f"line {ln}: unknown directive {head!r}")

    if kind is None:
        raise ModelFormatError("missing 'kind' line")
    leq |= {(w, w) for w in worlds}
    access = modal_r if kind is Kind.MODAL else (cond_r if kind is Kind.COND else None)
    model = KripkeModel(kind, worlds, leq, access, val_pos, val_neg)
    if point is not None and point not in model.worlds:
        raise StructuralError(f"point {point!r} is not a world")
    return model, point
