"""OpenQASM 2.0 subset reader and writer.

Accepted statements::

    OPENQASM 2.0;                    optional header
    include "qelib1.inc";            ignored
    qreg q[N];                       exactly one quantum register
    creg c[N];                       ignored
    opaque name q;                   declares a symbolic single-qubit slot gate
    barrier q[0], q[2];              breaks slot fusion
    h|s|sdg|x|y|z|id q[i];           Clifford gates (single-qubit gates broadcast over ``q``)
    cx|cz|swap q[i], q[j];
    rx|ry|rz|u1(expr) q[i];          slot gates; expr may be numeric or symbolic
    u3(expr, expr, expr) q[i];
    param_u<k> q[i];                 symbolic slot marker, as written by :func:`emit_qasm`

``t``/``tdg`` are rejected unless ``allow_fixed_gates`` is set, in which case
they become fixed-angle slots.  Measurement, reset, classical control and gate
definitions raise :class:`UnsupportedFeatureError`.
"""

from __future__ import annotations

import ast
import math
import operator
import re
from typing import Mapping

from .circuit import Barrier, CliffordUCircuit, ParametricGate, RawCircuit
from .tableau import CliffordGate

__all__ = [
    "QasmError",
    "UnsupportedFeatureError",
    "UnsupportedGateError",
    "emit_qasm",
    "evaluate_angle",
    "parse_qasm",
    "read_circuit",
]

CLIFFORD_NAMES = {
    "h": "H",
    "s": "S",
    "sdg": "S_DAGGER",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "cx": "CNOT",
    "CX": "CNOT",
    "cz": "CZ",
    "swap": "SWAP",
}
QASM_NAMES = {
    "H": "h",
    "S": "s",
    "S_DAGGER": "sdg",
    "X": "x",
    "Y": "y",
    "Z": "z",
    "CNOT": "cx",
    "CZ": "cz",
    "SWAP": "swap",
}
PARAM_ARITY = {"rx": 1, "ry": 1, "rz": 1, "u1": 1, "u3": 3}
FIXED_GATES = {"t": "pi/4", "tdg": "-pi/4"}
_UNSUPPORTED_KEYWORDS = {"measure", "reset", "if", "gate"}

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_MARKER_RE = re.compile(r"param_u\d+$")
_QREG_RE = re.compile(rf"qreg\s+({_IDENT})\s*\[\s*(\d+)\s*\]$")
_CREG_RE = re.compile(rf"creg\s+({_IDENT})\s*\[\s*(\d+)\s*\]$")
_ARG_RE = re.compile(rf"({_IDENT})\s*(?:\[\s*(\d+)\s*\])?$")
_OPAQUE_RE = re.compile(rf"opaque\s+({_IDENT})\s*(\([^)]*\))?\s*(.*)$")


class QasmError(ValueError):
    """Malformed or unsupported input, with a 1-based source line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnsupportedGateError(QasmError):
    pass


class UnsupportedFeatureError(QasmError):
    pass


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}


class _Symbolic(Exception):
    pass


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.Name):
        if node.id == "pi":
            return math.pi
        raise _Symbolic(node.id)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and len(node.args) == 1:
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ValueError(f"unsupported expression element {ast.dump(node)}")


def evaluate_angle(text: str) -> float | None:
    """Numeric value of an angle expression, or ``None`` if it names a free symbol."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed angle expression {text!r}") from exc
    try:
        return _eval_node(tree)
    except _Symbolic:
        return None


def _strip_comments(text: str) -> str:
    return re.sub(r"//[^\n]*", "", text)


def _statements(text: str):
    """Yield ``(line, statement)`` pairs split on ``;``."""
    pieces = _strip_comments(text).split(";")
    line = 1
    for k, piece in enumerate(pieces):
        body = piece.strip()
        start = line + piece[: len(piece) - len(piece.lstrip())].count("\n")
        line += piece.count("\n")
        if k == len(pieces) - 1:
            if body:
                raise QasmError(f"missing ';' after {body!r}", start)
        elif body:
            yield start, body


def _split_call(stmt: str, line: int):
    """Split ``name(params) args`` into its parts."""
    m = re.match(rf"({_IDENT})\s*", stmt)
    if not m:
        raise QasmError(f"cannot parse statement {stmt!r}", line)
    name = m.group(1)
    rest = stmt[m.end():]
    params: list[str] = []
    if rest.startswith("("):
        depth = 0
        for idx, ch in enumerate(rest):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0:
                break
        else:
            raise QasmError(f"unbalanced parentheses in {stmt!r}", line)
        inner = rest[1:idx]
        rest = rest[idx + 1:]
        params = _split_params(inner)
    return name, params, rest.strip()


def _split_params(inner: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in inner:
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if inner.strip():
        out.append("".join(cur).strip())
    return out


class _Reader:
    def __init__(self, allow_fixed_gates: bool):
        self.allow_fixed_gates = allow_fixed_gates
        self.qreg: tuple[str, int] | None = None
        self.opaque: set[str] = set()
        self.ops: list = []

    def qubits(self, args: str, line: int) -> list[list[int]]:
        """Each argument as a list of 1-based qubits (a bare register broadcasts)."""
        if self.qreg is None:
            raise QasmError("gate applied before any qreg declaration", line)
        name, size = self.qreg
        out = []
        for arg in (a.strip() for a in args.split(",")):
            m = _ARG_RE.match(arg)
            if not m:
                raise QasmError(f"malformed qubit argument {arg!r}", line)
            if m.group(1) != name:
                raise QasmError(f"unknown register {m.group(1)!r}", line)
            if m.group(2) is None:
                out.append(list(range(1, size + 1)))
            else:
                idx = int(m.group(2))
                if idx >= size:
                    raise QasmError(f"index {idx} out of range for {name}[{size}]", line)
                out.append([idx + 1])
        return out

    def statement(self, line: int, stmt: str) -> None:
        head = stmt.split(None, 1)[0].split("(", 1)[0]
        if stmt.startswith("OPENQASM"):
            if not re.match(r"OPENQASM\s+2(\.\d+)?$", stmt):
                raise UnsupportedFeatureError(f"only OpenQASM 2.x is supported, got {stmt!r}", line)
            return
        if head == "include":
            return
        if head == "qreg":
            m = _QREG_RE.match(stmt)
            if not m:
                raise QasmError(f"malformed qreg declaration {stmt!r}", line)
            if self.qreg is not None:
                raise UnsupportedFeatureError("programs with more than one qreg are not supported", line)
            self.qreg = (m.group(1), int(m.group(2)))
            if self.qreg[1] < 1:
                raise QasmError("qreg must have at least one qubit", line)
            return
        if head == "creg":
            if not _CREG_RE.match(stmt):
                raise QasmError(f"malformed creg declaration {stmt!r}", line)
            return
        if head == "opaque":
            m = _OPAQUE_RE.match(stmt)
            if not m or m.group(2) or "," in m.group(3):
                raise UnsupportedFeatureError(
                    "only parameterless single-qubit opaque gates are supported", line
                )
            self.opaque.add(m.group(1))
            return
        if head in _UNSUPPORTED_KEYWORDS:
            raise UnsupportedFeatureError(f"{head!r} statements are not supported", line)
        if head == "barrier":
            args = stmt[len("barrier"):].strip()
            qs = [q for group in self.qubits(args, line) for q in group] if args else []
            self.ops.append(Barrier(tuple(qs)))
            return
        self.gate(line, stmt)

    def gate(self, line: int, stmt: str) -> None:
        name, params, args = _split_call(stmt, line)
        if not args:
            raise QasmError(f"gate {name!r} has no qubit arguments", line)
        targets = self.qubits(args, line)
        if name == "id":
            return
        if name in CLIFFORD_NAMES:
            kind = CLIFFORD_NAMES[name]
            if params:
                raise QasmError(f"gate {name} takes no parameters", line)
            if kind in ("CNOT", "CZ", "SWAP"):
                if len(targets) != 2 or len(targets[0]) != 1 or len(targets[1]) != 1:
                    raise QasmError(f"gate {name} needs two single-qubit arguments", line)
                if targets[0][0] == targets[1][0]:
                    raise QasmError(f"gate {name} needs distinct qubits", line)
                self.ops.append(CliffordGate(kind, (targets[0][0], targets[1][0])))
            else:
                for q in self._single(name, targets, line):
                    self.ops.append(CliffordGate(kind, (q,)))
            return
        if name in PARAM_ARITY:
            if len(params) != PARAM_ARITY[name]:
                raise QasmError(f"gate {name} takes {PARAM_ARITY[name]} parameter(s), got {len(params)}", line)
            self._param(name, params, targets, line)
            return
        if name in FIXED_GATES and self.allow_fixed_gates:
            if params:
                raise QasmError(f"gate {name} takes no parameters", line)
            self._param(name, [FIXED_GATES[name]], targets, line)
            return
        if name in self.opaque or _MARKER_RE.match(name):
            if params:
                raise QasmError(f"slot marker {name} takes no parameters", line)
            for q in self._single(name, targets, line):
                self.ops.append(ParametricGate(name, (), (), q, line))
            return
        raise UnsupportedGateError(f"unsupported gate {name}", line)

    def _single(self, name, targets, line):
        if len(targets) != 1:
            raise QasmError(f"gate {name} acts on one qubit, got {len(targets)} arguments", line)
        return targets[0]

    def _param(self, name, params, targets, line):
        try:
            values = tuple(evaluate_angle(p) for p in params)
        except ValueError as exc:
            raise QasmError(str(exc), line) from None
        for q in self._single(name, targets, line):
            self.ops.append(ParametricGate(name, tuple(params), values, q, line))


def parse_qasm(text: str, allow_fixed_gates: bool = False) -> RawCircuit:
    """Read an OpenQASM 2.0 program into a :class:`RawCircuit`."""
    reader = _Reader(allow_fixed_gates)
    for line, stmt in _statements(text):
        reader.statement(line, stmt)
    if reader.qreg is None:
        raise QasmError("program declares no qreg")
    return RawCircuit(reader.qreg[1], reader.ops)


def read_circuit(path, fuse: bool = True, allow_fixed_gates: bool = False) -> CliffordUCircuit:
    from .circuit import normalize

    with open(path) as fh:
        return normalize(parse_qasm(fh.read(), allow_fixed_gates=allow_fixed_gates), fuse=fuse)


def emit_qasm(
    c: CliffordUCircuit,
    slot_names: Mapping[int, str] | None = None,
    keep_angles: bool = False,
) -> str:
    """Render ``c`` as OpenQASM 2.0.

    Slots become opaque gates ``param_u<label>`` (or ``slot_names[label]``).
    With ``keep_angles``, slots that carry concrete source gates are written as
    those gates instead, and a barrier separates neighbouring slots so that a
    re-read keeps them apart.
    """
    names = {s.label: (slot_names or {}).get(s.label, f"param_u{s.label}") for s in c.slots}
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    declared = []
    for s in c.slots:
        if keep_angles and s.content:
            wanted = [g.name for g in s.content if not g.fusable]
        else:
            wanted = [names[s.label]]
        declared += [w for w in wanted if w not in declared]
    lines += [f"opaque {name} a;" for name in declared]
    lines.append(f"qreg q[{c.n}];")

    def gate_line(g: CliffordGate) -> str:
        return f"{QASM_NAMES[g.kind]} " + ",".join(f"q[{t - 1}]" for t in g.targets) + ";"

    for i, layer in enumerate(c.layers):
        lines += [gate_line(g) for g in layer.gates]
        if i == c.m:
            break
        s = c.slots[i]
        if keep_angles and s.content:
            if i > 0 and not c.layers[i].gates:
                lines.append("barrier q;")
            for g in s.content:
                if g.fusable and g.name not in FIXED_GATES:
                    lines.append(f"{g.name}({', '.join(g.params)}) q[{s.qubit - 1}];")
                else:
                    lines.append(f"{g.name} q[{s.qubit - 1}];")
        else:
            lines.append(f"{names[s.label]} q[{s.qubit - 1}];")
    return "\n".join(lines) + "\n"
