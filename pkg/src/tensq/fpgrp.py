"""Finite presentations: text parsing and Todd-Coxeter enumeration.

The enumerator is the standard relator-based HLT strategy over the
trivial subgroup: every live coset is scanned against every relator,
scans fill in missing table entries, and collisions are resolved with a
union-find coincidence queue.  When the table closes, the number of
live cosets is the group order.  Running out of table space is an
ordinary outcome, reported in the result rather than raised.

The run is deterministic: relators are scanned in the order listed,
cosets are numbered in creation order, and the fill pass walks columns
left to right.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import TensqError
from .metagrp import GroupParams
from .presentations import Presentation, Word, exterior_and_schur, nu_presentation

DEFAULT_MAX_COSETS = 10**6


class PresentationSyntaxError(TensqError):
    """Malformed presentation text, located by line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"-?[0-9]+")
HEADER = "tensq-pres v1"


def _parse_relator(text: str, lineno: int, gen_index: dict[str, int]) -> Word:
    pos = 0
    end = len(text)
    factors = []
    while True:
        while pos < end and text[pos] == " ":
            pos += 1
        match = _NAME.match(text, pos)
        if not match:
            raise PresentationSyntaxError("expected a generator name", lineno, pos + 1)
        name = match.group()
        if name not in gen_index:
            raise PresentationSyntaxError(f"unknown generator '{name}'", lineno, pos + 1)
        pos = match.end()
        exponent = 1
        if pos < end and text[pos] == "^":
            pos += 1
            match = _INT.match(text, pos)
            if not match:
                raise PresentationSyntaxError("expected an integer exponent", lineno, pos + 1)
            exponent = int(match.group())
            if exponent == 0:
                raise PresentationSyntaxError("zero exponent", lineno, pos + 1)
            pos = match.end()
        factors.append((gen_index[name], exponent))
        while pos < end and text[pos] == " ":
            pos += 1
        if pos >= end:
            break
        if text[pos] != "*":
            raise PresentationSyntaxError("expected '*' between factors", lineno, pos + 1)
        pos += 1
    return tuple(factors)


def parse_presentation(text: str) -> Presentation:
    """Parse the plain-text presentation format back into a Presentation.

    Accepts an optional leading header line, then a "gens:" line, then
    one relator per line.  Inverse of ``presentation_to_text``.
    """
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx < len(lines) and lines[idx].strip() == HEADER:
        idx += 1
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
    if idx >= len(lines) or not lines[idx].strip().startswith("gens:"):
        raise PresentationSyntaxError("expected a 'gens:' line", idx + 1, 1)
    gens_line = lines[idx].strip()
    names = []
    for name in gens_line[len("gens:"):].replace(",", " ").split():
        if not _NAME.fullmatch(name):
            raise PresentationSyntaxError(f"bad generator name '{name}'", idx + 1, 1)
        if name in names:
            raise PresentationSyntaxError(f"duplicate generator '{name}'", idx + 1, 1)
        names.append(name)
    if not names:
        raise PresentationSyntaxError("no generators listed", idx + 1, 1)
    gen_index = {name: i for i, name in enumerate(names)}
    relators = []
    for lineno in range(idx + 1, len(lines)):
        body = lines[lineno]
        if not body.strip():
            continue
        relators.append(_parse_relator(body.rstrip(), lineno + 1, gen_index))
    return Presentation(name="parsed", generators=tuple(names), relators=tuple(relators))


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of one enumeration; order is None when the table overflowed."""

    order: int | None
    closed: bool
    cosets_used: int


class _TableOverflow(Exception):
    pass


class CosetTable:
    """Coset table over the trivial subgroup.

    Columns come in pairs: column 2g is the action of generator g,
    column 2g+1 of its inverse.  -1 marks an undefined entry.  Dead
    cosets are tracked through the union-find array ``p``.
    """

    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p = [0]
        self.queue: deque[int] = deque()
        self.live = 1

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def define(self, alpha: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise _TableOverflow
        new = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(new)
        self.table[alpha][x] = new
        self.table[new][x ^ 1] = alpha
        self.live += 1

    def merge(self, k: int, l: int) -> None:
        k = self.rep(k)
        l = self.rep(l)
        if k != l:
            lo, hi = (k, l) if k < l else (l, k)
            self.p[hi] = lo
            self.queue.append(hi)
            self.live -= 1

    def coincidence(self, alpha: int, beta: int) -> None:
        table = self.table
        self.merge(alpha, beta)
        while self.queue:
            gamma = self.queue.popleft()
            row = table[gamma]
            for x in range(self.ncols):
                delta = row[x]
                if delta == -1:
                    continue
                table[delta][x ^ 1] = -1
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if table[mu][x] != -1:
                    self.merge(nu, table[mu][x])
                elif table[nu][x ^ 1] != -1:
                    self.merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan_and_fill(self, alpha: int, letters: list[int]) -> None:
        table = self.table
        f = alpha
        i = 0
        b = alpha
        j = len(letters) - 1
        while True:
            while i <= j:
                nxt = table[f][letters[i]]
                if nxt == -1:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = table[b][letters[j] ^ 1]
                if nxt == -1:
                    break
                b = nxt
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][letters[i]] = b
                table[b][letters[i] ^ 1] = f
                return
            self.define(f, letters[i])


def _letters(word: Word) -> list[int]:
    out = []
    for gen, exp in word:
        col = 2 * gen if exp > 0 else 2 * gen + 1
        out.extend([col] * abs(exp))
    return out


def todd_coxeter(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> EnumerationResult:
    """Enumerate cosets of the trivial subgroup; order of the group.

    Returns order=None, closed=False when the table would exceed
    ``max_cosets`` rows; the caller decides whether to retry larger.
    """
    relator_letters = [_letters(w) for w in pres.relators]
    ct = CosetTable(len(pres.generators), max_cosets)
    try:
        alpha = 0
        while alpha < len(ct.table):
            if ct.p[alpha] == alpha:
                for letters in relator_letters:
                    ct.scan_and_fill(alpha, letters)
                    if ct.p[alpha] != alpha:
                        break
                if ct.p[alpha] == alpha:
                    row = ct.table[alpha]
                    for x in range(ct.ncols):
                        if row[x] == -1:
                            ct.define(alpha, x)
            alpha += 1
    except _TableOverflow:
        return EnumerationResult(order=None, closed=False, cosets_used=len(ct.table))
    return EnumerationResult(order=ct.live, closed=True, cosets_used=len(ct.table))


@dataclass(frozen=True)
class CertificationResult:
    """Comparison of the enumerated nu(G) order against the closed form."""

    status: str  # PASS, FAIL or INCONCLUSIVE
    predicted: int
    enumerated: int | None
    cosets_used: int


def certify_nu_order(params: GroupParams, max_cosets: int = DEFAULT_MAX_COSETS) -> CertificationResult:
    """Enumerate nu(G) from its presentation and compare orders."""
    predicted = exterior_and_schur(params).nu_order_predicted
    result = todd_coxeter(nu_presentation(params), max_cosets=max_cosets)
    if not result.closed:
        status = "INCONCLUSIVE"
    elif result.order == predicted:
        status = "PASS"
    else:
        status = "FAIL"
    return CertificationResult(
        status=status,
        predicted=predicted,
        enumerated=result.order,
        cosets_used=result.cosets_used,
    )
