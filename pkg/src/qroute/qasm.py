"""
OpenQASM 2.0 subset reader/writer.

Accepted: header, include, qreg/creg, barrier, measure (dropped with a
warning), cx/CX, cz, swap, and any single-qubit gate call. Parameters are
kept as verbatim expression text. Register arguments without a subscript
broadcast over the register. ``gate``/``opaque`` declarations are skipped;
calls to them are opaque single-qubit gates when applied to one qubit.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Iterator

from .circuit import BARRIER, CX, CZ, SWAP, Circuit, Gate, cx
from .errors import CircuitError, QasmSemanticError, QasmSyntaxError, UnsupportedGateError

log = logging.getLogger(__name__)

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<eq>==)
  | (?P<real>(\d+\.\d*|\.\d+)([eE][-+]?\d+)?|\d+[eE][-+]?\d+)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[;,()\[\]{}+\-*/^])
""", re.VERBOSE)

_TWO_QUBIT = {"cx": CX, "CX": CX, "cz": CZ, "swap": SWAP}


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> Iterator[Token]:
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmSyntaxError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            yield Token(kind, m.group(), line, pos - start + 1)
        pos = m.end()
    yield Token("eof", "", line, pos - start + 1)


@dataclass
class QasmProgram:
    qregs: dict[str, int] = field(default_factory=dict)
    cregs: dict[str, int] = field(default_factory=dict)
    includes: list[str] = field(default_factory=list)
    statements: list[tuple[int, Gate]] = field(default_factory=list)  # (source line, gate)

    @property
    def num_qubits(self) -> int:
        return sum(self.qregs.values())

    def to_circuit(self) -> Circuit:
        return Circuit(self.num_qubits, [g for _, g in self.statements])


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(tokenize(text))
        self.i = 0
        self.prog = QasmProgram()
        self.offsets: dict[str, int] = {}
        self.user_gates: dict[str, int] = {}
        self.dropped_measures = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.text else "end of input"
            raise QasmSyntaxError(f"expected {want}, got {got}", t.line, t.col)
        return self.next()

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("sym", "arrow"):
            self.i += 1
            return True
        return False

    def parse(self) -> QasmProgram:
        if self.tok.kind == "id" and self.tok.text == "OPENQASM":
            self.next()
            version = self.next()
            if version.kind not in ("real", "int") or not version.text.startswith("2"):
                raise QasmSyntaxError(f"unsupported OpenQASM version {version.text!r}", version.line, version.col)
            self.expect("sym", ";")
        while self.tok.kind != "eof":
            self.statement()
        if self.dropped_measures:
            log.warning("dropped %d measure statement(s)", self.dropped_measures)
        return self.prog

    def statement(self) -> None:
        t = self.tok
        if t.kind != "id":
            raise QasmSyntaxError(f"unexpected {t.text!r}", t.line, t.col)
        word = t.text
        if word == "include":
            self.next()
            self.prog.includes.append(self.expect("string").text.strip('"'))
            self.expect("sym", ";")
        elif word in ("qreg", "creg"):
            self.next()
            name = self.expect("id")
            self.expect("sym", "[")
            size = int(self.expect("int").text)
            self.expect("sym", "]")
            self.expect("sym", ";")
            if name.text in self.prog.qregs or name.text in self.prog.cregs:
                raise QasmSemanticError(f"register {name.text!r} declared twice", name.line, name.col)
            if word == "qreg":
                self.offsets[name.text] = self.prog.num_qubits
                self.prog.qregs[name.text] = size
            else:
                self.prog.cregs[name.text] = size
        elif word in ("gate", "opaque"):
            self.declaration(word)
        elif word == "measure":
            self.next()
            self.qarg()
            self.expect("arrow")
            self.carg()
            self.expect("sym", ";")
            self.dropped_measures += 1
        elif word == "barrier":
            self.next()
            qubits = [q for arg in self.qargs() for q in arg]
            self.expect("sym", ";")
            self.emit(t, BARRIER, tuple(dict.fromkeys(qubits)))
        elif word in ("reset", "if"):
            raise UnsupportedGateError(word, t.line, t.col)
        else:
            self.gate_call()

    def declaration(self, word: str) -> None:
        self.next()
        name = self.expect("id").text
        if self.accept("("):
            while not self.accept(")"):
                self.next()
        args = [self.expect("id")]
        while self.accept(","):
            args.append(self.expect("id"))
        self.user_gates[name] = len(args)
        if word == "opaque":
            self.expect("sym", ";")
            return
        self.expect("sym", "{")
        depth = 1
        while depth:
            t = self.next()
            if t.kind == "eof":
                raise QasmSyntaxError("unterminated gate body", t.line, t.col)
            depth += t.text == "{"
            depth -= t.text == "}"

    def params(self) -> tuple[str, ...]:
        if not self.accept("("):
            return ()
        out: list[str] = []
        cur: list[str] = []
        depth = 0
        while True:
            t = self.next()
            if t.kind == "eof":
                raise QasmSyntaxError("unterminated parameter list", t.line, t.col)
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                if depth == 0:
                    break
                depth -= 1
            elif t.text == "," and depth == 0:
                out.append("".join(cur))
                cur = []
                continue
            cur.append(t.text)
        if not cur and out:
            raise QasmSyntaxError("empty parameter", t.line, t.col)
        if cur:
            out.append("".join(cur))
        return tuple(out)

    def qarg(self) -> list[int]:
        name = self.expect("id")
        if name.text not in self.prog.qregs:
            raise QasmSemanticError(f"undeclared quantum register {name.text!r}", name.line, name.col)
        size, off = self.prog.qregs[name.text], self.offsets[name.text]
        if self.accept("["):
            idx = self.expect("int")
            self.expect("sym", "]")
            k = int(idx.text)
            if k >= size:
                raise QasmSemanticError(f"index {k} out of range for {name.text}[{size}]", idx.line, idx.col)
            return [off + k]
        return list(range(off, off + size))

    def carg(self) -> None:
        name = self.expect("id")
        if name.text not in self.prog.cregs:
            raise QasmSemanticError(f"undeclared classical register {name.text!r}", name.line, name.col)
        if self.accept("["):
            idx = self.expect("int")
            self.expect("sym", "]")
            if int(idx.text) >= self.prog.cregs[name.text]:
                raise QasmSemanticError(f"index {idx.text} out of range for {name.text}", idx.line, idx.col)

    def qargs(self) -> list[list[int]]:
        args = [self.qarg()]
        while self.accept(","):
            args.append(self.qarg())
        return args

    def gate_call(self) -> None:
        name = self.next()
        params = self.params()
        args = self.qargs()
        self.expect("sym", ";")
        arity = len(args)
        if arity == 2 and name.text in _TWO_QUBIT:
            kind = _TWO_QUBIT[name.text]
        elif arity == 1 and self.user_gates.get(name.text, 1) == 1:
            kind = name.text
        else:
            raise UnsupportedGateError(name.text, name.line, name.col)
        width = {len(a) for a in args if len(a) > 1}
        if len(width) > 1:
            raise QasmSemanticError("register arguments of different sizes", name.line, name.col)
        n = width.pop() if width else 1
        for k in range(n):
            qubits = tuple(a[k] if len(a) > 1 else a[0] for a in args)
            self.emit(name, kind, qubits, params)

    def emit(self, t: Token, kind: str, qubits: tuple[int, ...], params: tuple[str, ...] = ()) -> None:
        try:
            gate = Gate(kind, qubits, params)
        except CircuitError as e:
            raise QasmSemanticError(str(e), t.line, t.col) from None
        self.prog.statements.append((t.line, gate))


def parse_program(text: str) -> QasmProgram:
    return _Parser(text).parse()


def parse_qasm(text: str) -> Circuit:
    return parse_program(text).to_circuit()


def load_qasm(path) -> Circuit:
    with open(path, encoding="utf-8") as f:
        return parse_qasm(f.read())


def _stmt(g: Gate) -> str:
    p = f"({','.join(g.params)})" if g.params else ""
    return f"{g.name}{p} " + ",".join(f"q[{q}]" for q in g.qubits) + ";"


def emit_qasm(circuit: Circuit, physical_width: int | None = None) -> str:
    """Serialise with one ``qreg q[width]``; SWAPs are written as three ``cx``."""
    width = circuit.num_qubits if physical_width is None else physical_width
    if any(q >= width for g in circuit.gates for q in g.qubits):
        raise ValueError(f"circuit uses qubits beyond width {width}")
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{width}];"]
    for g in circuit.gates:
        if g.name == SWAP:
            a, b = g.qubits
            lines += [_stmt(cx(a, b)), _stmt(cx(b, a)), _stmt(cx(a, b))]
        else:
            lines.append(_stmt(g))
    return "\n".join(lines) + "\n"


def save_qasm(circuit: Circuit, path, physical_width: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(emit_qasm(circuit, physical_width))
