"""Arithmetic circuits with unbounded fan-in Add/Mul gates.

Gates live in a flat array in topological order.  A gate is one of

    (IN, input_index)   (CONST, value)   (ADD, refs)   (MUL, refs)

where ``refs`` is a sorted tuple of earlier gate ids (repeats allowed, so
``Mul(x, x, x)`` is x^3).  Circuits are built through :class:`Builder`, which
hash-conses identical gates, and frozen into :class:`Circuit`.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import MissingInput, ParseError, SignatureMismatch
from .field import FieldCtx, FieldElem, parse_field

IN, CONST, ADD, MUL = 0, 1, 2, 3
OP_NAMES = {IN: "in", CONST: "const", ADD: "add", MUL: "mul"}
OP_CODES = {v: k for k, v in OP_NAMES.items()}
FORMAT_VERSION = 1


class Builder:
    """Mutable, hash-consing circuit constructor."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.ops: list[int] = []
        self.args: list[Any] = []
        self.depth: list[int] = []
        self.inputs: list[tuple[str, str]] = []
        self._by_name: dict[str, int] = {}
        self._key: dict = {}

    def _new(self, op: int, a, depth: int) -> int:
        key = (op, a)
        g = self._key.get(key)
        if g is None:
            g = len(self.ops)
            self.ops.append(op)
            self.args.append(a)
            self.depth.append(depth)
            self._key[key] = g
        return g

    def input(self, name: str, group: str = "x") -> int:
        if name in self._by_name:
            return self._by_name[name]
        idx = len(self.inputs)
        self.inputs.append((name, group))
        g = self._new(IN, idx, 0)
        self._by_name[name] = g
        return g

    def inputs_of(self, names: Iterable[str], group: str = "x") -> list[int]:
        return [self.input(n, group) for n in names]

    def const(self, v: int) -> int:
        return self._new(CONST, int(v), 0)

    def add(self, refs: Iterable[int]) -> int:
        refs = tuple(sorted(refs))
        if not refs:
            return self.const(0)
        dp = self.depth
        return self._new(ADD, refs, 1 + max(dp[r] for r in refs))

    def mul(self, refs: Iterable[int]) -> int:
        refs = tuple(sorted(refs))
        if not refs:
            return self.const(1)
        dp = self.depth
        return self._new(MUL, refs, 1 + max(dp[r] for r in refs))

    def scale(self, c: int, ref: int) -> int:
        """c * ref; a constant is folded into an existing Mul so depth is unchanged."""
        F = self.ctx
        if c == 0:
            return self.const(0)
        if self.ops[ref] == CONST:
            return self.const(F.mul(c, self.args[ref]))
        if self.ops[ref] == MUL:
            rest = [a for a in self.args[ref] if self.ops[a] != CONST]
            for a in self.args[ref]:
                if self.ops[a] == CONST:
                    c = F.mul(c, self.args[a])
            if c == 0:
                return self.const(0)
            return self.mul(rest + [self.const(c)])
        return self.mul([self.const(c), ref])

    def mul_c(self, c: int, refs: Iterable[int]) -> int:
        """Single Mul gate c * prod(refs)."""
        refs = list(refs)
        if c == 0:
            return self.const(0)
        if not refs:
            return self.const(c)
        return self.mul(refs + [self.const(c)])

    def linear(self, terms: Iterable[tuple[int, int]], const: int = 0) -> int:
        """Add of c_i * ref_i (+ const)."""
        parts = [self.scale(c, r) for c, r in terms if c]
        if const:
            parts.append(self.const(const))
        return self.add(parts)

    def neg(self, ref: int) -> int:
        return self.scale(self.ctx.neg(1), ref)

    def sub(self, a: int, b: int) -> int:
        return self.add([a, self.neg(b)])

    def pow(self, ref: int, e: int) -> int:
        return self.mul([ref] * e)

    def embed(self, circ: "Circuit", input_map: Mapping[str, int] | None = None, auto_inputs: bool = True) -> list[int]:
        """Copy ``circ`` into this builder with its inputs wired to ``input_map``.

        Unmapped inputs become builder inputs of the same name when ``auto_inputs``.
        """
        input_map = input_map or {}
        new = [0] * len(circ.ops)
        in_refs = []
        for name, group in circ.inputs:
            if name in input_map:
                in_refs.append(input_map[name])
            elif auto_inputs:
                in_refs.append(self.input(name, group))
            else:
                raise MissingInput(name)
        ops, args = circ.ops, circ.args
        add, mul, const = self.add, self.mul, self.const
        for g in range(len(ops)):
            op = ops[g]
            a = args[g]
            if op == ADD:
                new[g] = add([new[r] for r in a])
            elif op == MUL:
                new[g] = mul([new[r] for r in a])
            elif op == CONST:
                new[g] = const(a)
            else:
                new[g] = in_refs[a]
        return [new[o] for o in circ.outputs]

    def circuit(self, outputs: Sequence[int], inputs: Sequence[tuple[str, str]] | None = None) -> "Circuit":
        """Freeze the part reachable from ``outputs``.

        ``inputs`` fixes the signature (order and groups); by default all builder
        inputs are kept, in creation order.
        """
        sig = list(inputs) if inputs is not None else list(self.inputs)
        for name, group in sig:
            self.input(name, group)
        live = bytearray(len(self.ops))
        for o in outputs:
            live[o] = 1
        ops, args = self.ops, self.args
        for g in range(len(ops) - 1, -1, -1):
            if live[g] and ops[g] >= ADD:
                for r in args[g]:
                    live[r] = 1
        pos = {name: i for i, (name, _) in enumerate(sig)}
        remap = {}
        new_ops, new_args = [], []
        # inputs first, in signature order, so every signature entry is present
        for i, (name, _) in enumerate(sig):
            remap[self._by_name[name]] = len(new_ops)
            new_ops.append(IN)
            new_args.append(i)
        for g in range(len(ops)):
            if not live[g] or g in remap:
                continue
            op = ops[g]
            if op == IN:
                name = self.inputs[args[g]][0]
                if name not in pos:
                    raise SignatureMismatch(f"input {name!r} used but not in signature")
                continue
            remap[g] = len(new_ops)
            new_ops.append(op)
            new_args.append(tuple(sorted(remap[r] for r in args[g])) if op >= ADD else args[g])
        return Circuit(self.ctx, tuple(sig), tuple(new_ops), tuple(new_args), tuple(remap[o] for o in outputs))


@dataclass(frozen=True)
class CircuitStats:
    gates: int
    wires: int
    depth: int
    inputs: int = 0
    consts: int = 0

    def as_dict(self) -> dict:
        return {"gates": self.gates, "wires": self.wires, "depth": self.depth}


@dataclass(frozen=True, eq=False)
class Circuit:
    ctx: FieldCtx
    inputs: tuple[tuple[str, str], ...]
    ops: tuple[int, ...]
    args: tuple[Any, ...]
    outputs: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- basic queries

    @property
    def input_names(self) -> list[str]:
        return [n for n, _ in self.inputs]

    def group_names(self, group: str) -> list[str]:
        return [n for n, g in self.inputs if g == group]

    def __len__(self) -> int:
        return len(self.ops)

    def gate_depths(self) -> list[int]:
        if "depths" not in self._cache:
            d = [0] * len(self.ops)
            for g, (op, a) in enumerate(zip(self.ops, self.args)):
                if op >= ADD:
                    d[g] = 1 + max(d[r] for r in a)
            self._cache["depths"] = d
        return self._cache["depths"]

    def stats(self) -> CircuitStats:
        d = self.gate_depths()
        gates = wires = nin = nconst = 0
        for op, a in zip(self.ops, self.args):
            if op >= ADD:
                gates += 1
                wires += len(a)
            elif op == IN:
                nin += 1
            else:
                nconst += 1
        depth = max((d[o] for o in self.outputs), default=0)
        return CircuitStats(gates, wires, depth, nin, nconst)

    def structure_key(self) -> tuple:
        return (self.ctx, self.inputs, self.ops, self.args, self.outputs)

    def _names_for(self, group) -> set[str]:
        if isinstance(group, str):
            names = {n for n, g in self.inputs if g == group}
            return names
        return set(group)

    def syntactic_degree(self, group, per_output: bool = False):
        """Structural degree bound in the inputs selected by ``group``.

        ``group`` is a group tag or an explicit collection of input names.
        """
        names = self._names_for(group)
        key = ("deg", frozenset(names))
        if key not in self._cache:
            deg = [0] * len(self.ops)
            for g, (op, a) in enumerate(zip(self.ops, self.args)):
                if op == IN:
                    deg[g] = 1 if self.inputs[a][0] in names else 0
                elif op == ADD:
                    deg[g] = max(deg[r] for r in a)
                elif op == MUL:
                    deg[g] = sum(deg[r] for r in a)
            self._cache[key] = [deg[o] for o in self.outputs]
        out = self._cache[key]
        return list(out) if per_output else max(out, default=0)

    def max_var_degree(self, names: Iterable[str]) -> int:
        return max((self.syntactic_degree([n]) for n in names), default=0)

    # -- evaluation

    def eval(self, assignment: Mapping[str, Any], const: Callable[[int], Any] | None = None) -> list:
        """Gate-by-gate evaluation over the field or a commutative ring.

        Field values may be ints (encoded) or FieldElem; the result is FieldElem.
        Ring values (UniPoly, TruncMV, ...) must provide ``const_like(c)``
        unless ``const`` is given.
        """
        vals = []
        for name, _ in self.inputs:
            if name not in assignment:
                raise MissingInput(name)
            vals.append(assignment[name])
        sample = next((v for v in vals if not isinstance(v, (int, np.integer, FieldElem))), None)
        if sample is None and const is None:
            return self._eval_field([encode(self.ctx, v) for v in vals])
        if const is None:
            const = sample.const_like
        lift = lambda v: const(encode(self.ctx, v)) if isinstance(v, (int, np.integer, FieldElem)) else v  # noqa: E731
        vals = [lift(v) for v in vals]
        out = [None] * len(self.ops)
        for g, (op, a) in enumerate(zip(self.ops, self.args)):
            if op == IN:
                out[g] = vals[a]
            elif op == CONST:
                out[g] = const(a)
            elif op == ADD:
                acc = out[a[0]]
                for r in a[1:]:
                    acc = acc + out[r]
                out[g] = acc
            else:
                acc = None
                for r, k in Counter(a).items():
                    t = out[r] if k == 1 else _ring_pow(out[r], k)
                    acc = t if acc is None else acc * t
                out[g] = acc
        return [out[o] for o in self.outputs]

    def _eval_field(self, vals: list[int]) -> list[FieldElem]:
        F = self.ctx
        out = [0] * len(self.ops)
        for g, (op, a) in enumerate(zip(self.ops, self.args)):
            if op == IN:
                out[g] = vals[a]
            elif op == CONST:
                out[g] = a
            elif op == ADD:
                out[g] = F.sum(out[r] for r in a)
            else:
                acc = 1
                for r, k in Counter(a).items():
                    acc = F.mul(acc, F.pow(out[r], k) if k > 1 else out[r])
                out[g] = acc
        return [FieldElem(F, out[o]) for o in self.outputs]

    def eval_batch(self, columns: Mapping[str, Any], batch: int | None = None) -> np.ndarray:
        """Vectorized evaluation at many points.

        ``columns`` maps input name -> array of encoded field ints (or a scalar).
        Returns an int64 array of shape (n_outputs, batch).
        """
        if batch is None:
            batch = max((np.size(v) for v in columns.values()), default=1)
        cols = []
        for name, _ in self.inputs:
            if name not in columns:
                raise MissingInput(name)
            v = np.asarray(columns[name], dtype=np.int64)
            cols.append(np.broadcast_to(v, (batch,)))
        plan = self._plan()
        chunk = max(1, min(batch, (1 << 24) // max(1, len(self.ops))))
        res = np.empty((len(self.outputs), batch), dtype=np.int64)
        for s in range(0, batch, chunk):
            e = min(batch, s + chunk)
            res[:, s:e] = plan.run([c[s:e] for c in cols])
        return res

    def _plan(self) -> "_LevelPlan":
        if "plan" not in self._cache:
            self._cache["plan"] = _LevelPlan(self)
        return self._cache["plan"]

    # -- serialization

    def to_json(self) -> dict:
        gates = []
        for op, a in zip(self.ops, self.args):
            gates.append({"op": OP_NAMES[op], "args": list(a) if op >= ADD else [a]})
        return {
            "version": FORMAT_VERSION,
            "field": self.ctx.spec,
            "inputs": [{"name": n, "group": g} for n, g in self.inputs],
            "gates": gates,
            "outputs": list(self.outputs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Circuit":
        if not isinstance(obj, dict):
            raise ParseError("top level must be an object", "$")
        if obj.get("version") != FORMAT_VERSION:
            raise ParseError(f"unsupported version {obj.get('version')!r}", "version")
        for key in ("field", "inputs", "gates", "outputs"):
            if key not in obj:
                raise ParseError(f"missing key {key!r}", key)
        try:
            ctx = parse_field(obj["field"])
        except Exception as e:  # noqa: BLE001
            raise ParseError(f"bad field: {e}", "field") from e
        try:
            inputs = tuple((str(i["name"]), str(i.get("group", "x"))) for i in obj["inputs"])
        except (TypeError, KeyError) as e:
            raise ParseError("malformed inputs", "inputs") from e
        ops, args = [], []
        for g, gate in enumerate(obj["gates"]):
            where = f"gates[{g}]"
            if not isinstance(gate, dict) or gate.get("op") not in OP_CODES:
                raise ParseError("unknown gate op", where)
            op = OP_CODES[gate["op"]]
            a = gate.get("args")
            if not isinstance(a, list) or not all(isinstance(x, int) for x in a):
                raise ParseError("args must be a list of ints", where)
            if op == IN:
                if len(a) != 1 or not 0 <= a[0] < len(inputs):
                    raise ParseError("bad input index", where)
                args.append(a[0])
            elif op == CONST:
                if len(a) != 1 or not 0 <= a[0] < ctx.q:
                    raise ParseError("bad constant", where)
                args.append(a[0])
            else:
                if not a or any(not 0 <= r < g for r in a):
                    raise ParseError("gate refs must point to earlier gates", where)
                args.append(tuple(sorted(a)))
            ops.append(op)
        outs = obj["outputs"]
        if not isinstance(outs, list) or any(not isinstance(o, int) or not 0 <= o < len(ops) for o in outs):
            raise ParseError("bad output refs", "outputs")
        return cls(ctx, inputs, tuple(ops), tuple(args), tuple(outs))

    def serialize(self) -> bytes:
        return json.dumps(self.to_json(), separators=(",", ":")).encode()

    @classmethod
    def deserialize(cls, data: bytes | str) -> "Circuit":
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.pos) from e
        return cls.from_json(obj)


def encode(ctx: FieldCtx, v) -> int:
    """Encoded int of a field value; plain ints in [0, q) are taken as encodings."""
    if isinstance(v, FieldElem):
        return v.value
    v = int(v)
    return v if 0 <= v < ctx.q else ctx.from_int(v)


def _ring_pow(x, k: int):
    r = None
    while k:
        if k & 1:
            r = x if r is None else r * x
        k >>= 1
        if k:
            x = x * x
    return r


class _LevelPlan:
    """Gates grouped by depth; each level is evaluated with a few numpy calls."""

    def __init__(self, c: Circuit):
        self.ctx = c.ctx
        self.n = len(c.ops)
        self.outputs = np.array(c.outputs, dtype=np.int64)
        ins, consts, cvals = [], [], []
        for g, (op, a) in enumerate(zip(c.ops, c.args)):
            if op == IN:
                ins.append((g, a))
            elif op == CONST:
                consts.append(g)
                cvals.append(a)
        self.in_gates = np.array([g for g, _ in ins], dtype=np.int64)
        self.in_idx = [i for _, i in ins]
        self.const_gates = np.array(consts, dtype=np.int64)
        self.const_vals = np.array(cvals, dtype=np.int64)
        depth = c.gate_depths()
        levels: dict[int, dict[int, list[int]]] = {}
        for g, op in enumerate(c.ops):
            if op >= ADD:
                levels.setdefault(depth[g], {ADD: [], MUL: []})[op].append(g)
        self.levels = []
        for lv in sorted(levels):
            entry = []
            for op in (ADD, MUL):
                gs = levels[lv][op]
                if not gs:
                    continue
                if op == MUL:
                    # repeated factors become (ref, count) pairs
                    runs = [_runs(c.args[g]) for g in gs]
                    fan = np.array([len(r) for r in runs], dtype=np.int64)
                    flat = np.array([r for rs in runs for r, _ in rs], dtype=np.int64)
                    cnt = np.array([k for rs in runs for _, k in rs], dtype=np.int64)
                else:
                    fan = np.array([len(c.args[g]) for g in gs], dtype=np.int64)
                    flat = np.fromiter((r for g in gs for r in c.args[g]), dtype=np.int64, count=int(fan.sum()))
                    cnt = None
                off = np.zeros(len(gs), dtype=np.int64)
                np.cumsum(fan[:-1], out=off[1:])
                entry.append((op, np.array(gs, dtype=np.int64), flat, off, fan, cnt))
            self.levels.append(entry)

    def run(self, cols: list[np.ndarray]) -> np.ndarray:
        B = len(cols[0]) if cols else 1
        V = np.zeros((self.n, B), dtype=np.int64)
        for g, i in zip(self.in_gates, self.in_idx):
            V[g] = cols[i]
        if len(self.const_gates):
            V[self.const_gates] = self.const_vals[:, None]
        for entry in self.levels:
            for op, gs, flat, off, fan, cnt in entry:
                vals = V[flat]
                V[gs] = self._add(vals, off) if op == ADD else self._mul(vals, off, fan, cnt)
        return V[self.outputs]

    def _add(self, vals, off):
        F = self.ctx
        if F.k == 1:
            return np.add.reduceat(vals, off, axis=0) % F.p
        if F.p == 2:
            return np.bitwise_xor.reduceat(vals, off, axis=0)
        return _packed_segment_sums(F, vals, off)

    def _mul(self, vals, off, fan, cnt):
        F = self.ctx
        if F.has_tables:
            log, exp, _, _ = F._tables
            s = np.add.reduceat(log[vals] * cnt[:, None], off, axis=0) % (F.q - 1)
            zero = np.add.reduceat((vals == 0).astype(np.int64), off, axis=0) > 0
            out = exp[s]
            out[zero] = 0
            return out
        if F.k != 1:
            raise NotImplementedError("extension fields above the table limit")
        # large prime: multiply argument columns one position at a time
        p = F.p
        pw = _vpow_mod(vals, cnt, p)
        out = pw[off].copy()
        for j in range(1, int(fan.max())):
            sel = np.nonzero(fan > j)[0]
            out[sel] = out[sel] * pw[off[sel] + j] % p
        return out


def _packed_segment_sums(F, vals: np.ndarray, off: np.ndarray) -> np.ndarray:
    """Segment sums of odd-characteristic extension elements via packed digits."""
    pk, b, m = F._packing
    mask = (1 << b) - 1
    x = pk[vals]
    while True:
        lens = np.diff(np.append(off, x.shape[0]))
        if lens.max() <= m:
            s = np.add.reduceat(x, off, axis=0)
            out = np.zeros_like(s)
            for i in reversed(range(F.k)):
                out = out * F.p + ((s >> (b * i)) & mask) % F.p
            return out
        # sum chunks of at most m, reduce their digits mod p, then repeat on the chunk sums
        nch = -(-lens // m)
        first = np.cumsum(nch) - nch
        starts = np.repeat(off, nch) + (np.arange(int(nch.sum())) - np.repeat(first, nch)) * m
        s = np.add.reduceat(x, starts, axis=0)
        x = np.zeros_like(s)
        for i in range(F.k):
            x |= (((s >> (b * i)) & mask) % F.p) << (b * i)
        off = first


def _runs(args) -> list[tuple[int, int]]:
    """Sorted args as (ref, multiplicity) pairs."""
    out: list[list[int]] = []
    for r in args:
        if out and out[-1][0] == r:
            out[-1][1] += 1
        else:
            out.append([r, 1])
    return [(r, k) for r, k in out]


def _vpow_mod(x: np.ndarray, e: np.ndarray, p: int) -> np.ndarray:
    """Row-wise x ** e mod p for a prime p < 2^31 (e is one exponent per row)."""
    r = np.ones_like(x)
    base = x % p
    e = e.copy()
    while np.any(e):
        odd = (e & 1).astype(bool)
        r[odd] = r[odd] * base[odd] % p
        base = base * base % p
        e >>= 1
    return r


def substitute(c: Circuit, plug: Mapping[str, Circuit]) -> Circuit:
    """Replace inputs of ``c`` by single-output circuits sharing one signature."""
    if not plug:
        return c
    sigs = {tuple(p.inputs) for p in plug.values()}
    if len(sigs) != 1:
        raise SignatureMismatch("plugged circuits must share one input signature")
    for name, p in plug.items():
        if name not in c.input_names:
            raise SignatureMismatch(f"{name!r} is not an input of the circuit")
        if len(p.outputs) != 1:
            raise SignatureMismatch("plugged circuits must have one output")
    sig = list(next(iter(sigs)))
    b = Builder(c.ctx)
    for name, group in sig:
        b.input(name, group)
    refs = {}
    for name, p in plug.items():
        refs[name] = b.embed(p)[0]
    rest = [(n, g) for n, g in c.inputs if n not in plug and n not in dict(sig)]
    for n, g in rest:
        b.input(n, g)
    outs = b.embed(c, refs)
    return b.circuit(outs, sig + rest)


def lift_circuit(c: Circuit, big: FieldCtx, table: Sequence[int]) -> Circuit:
    """Same circuit with constants mapped into an extension field via ``table``."""
    args = tuple(table[a] if op == CONST else a for op, a in zip(c.ops, c.args))
    return Circuit(big, c.inputs, c.ops, args, c.outputs)


def const_circuit(ctx: FieldCtx, value: int, inputs: Sequence[tuple[str, str]] = ()) -> Circuit:
    b = Builder(ctx)
    for n, g in inputs:
        b.input(n, g)
    return b.circuit([b.const(value)])


def from_polynomial(P, groups: Mapping[str, str] | None = None) -> Circuit:
    """Depth-2 sum-of-monomials circuit of a TruncMV or UniPoly."""
    from .polyring import UniPoly

    ctx = P.ctx
    b = Builder(ctx)
    groups = groups or {}
    if isinstance(P, UniPoly):
        y = b.input(P.var, groups.get(P.var, P.var))
        terms = [b.mul_c(c, [y] * i) for i, c in enumerate(P.coeffs) if c]
        return b.circuit([b.add(terms)])
    refs = [b.input(v, groups.get(v, "x")) for v in P.vars]
    terms = []
    for e, c in sorted(P.terms.items()):
        terms.append(b.mul_c(c, [r for r, k in zip(refs, e) for _ in range(k)]))
    return b.circuit([b.add(terms)])


def to_truncmv(c: Circuit, vars: Sequence[str] | None = None, cap: int | None = None, output: int = 0):
    """Symbolic evaluation into TruncMV (cap defaults to the syntactic degree)."""
    from .polyring import TruncMV

    vars = list(vars or c.input_names)
    if cap is None:
        cap = c.syntactic_degree(vars)
    asg = {v: TruncMV.var(c.ctx, vars, cap, v) for v in vars}
    for n in c.input_names:
        asg.setdefault(n, TruncMV.const(c.ctx, vars, cap, 0))
    return c.eval(asg)[output]


@dataclass(frozen=True)
class RatioCircuit:
    num: Circuit
    den: Circuit

    def __post_init__(self):
        if self.num.inputs != self.den.inputs:
            raise SignatureMismatch("numerator and denominator must share inputs")

    def eval(self, assignment) -> FieldElem:
        n = self.num.eval(assignment)[0]
        d = self.den.eval(assignment)[0]
        return n / d

    def check_denominator(self, rng, points: int = 20) -> bool:
        """True if the denominator is nonzero somewhere among random points."""
        ctx = self.den.ctx
        cols = {n: rng.integers(0, ctx.q, size=points) for n in self.den.input_names}
        return bool(np.any(self.den.eval_batch(cols, points)[0] != 0))


@dataclass
class PiecewiseFamily:
    """Test circuits T_k and computation circuits (A_k, B_k); advice selects the index."""

    params: tuple
    tests: dict[int, Circuit]
    nums: dict[int, Circuit]
    dens: dict[int, Circuit]
    advice_rule: str = "max k with T_k != 0"
    meta: dict = field(default_factory=dict)

    @property
    def K(self) -> int:
        return max(self.tests)

    def circuits(self) -> list[Circuit]:
        seen, out = set(), []
        for d in (self.tests, self.nums, self.dens):
            for c in d.values():
                if id(c) not in seen:
                    seen.add(id(c))
                    out.append(c)
        return out
