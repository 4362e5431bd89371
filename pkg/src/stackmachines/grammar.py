"""A small context-free grammar container with CNF conversion and CYK membership.

Production right-hand sides are tuples whose ``str`` entries name nonterminals
and whose other entries are terminal tokens.  This is enough for the grammars
used here, whose terminals are stack-operation tokens.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence


@dataclass
class Grammar:
    start: str
    productions: dict[str, list[tuple]]
    _cnf: "CnfGrammar | None" = field(default=None, repr=False, compare=False)

    def nonterminals(self) -> frozenset[str]:
        return frozenset(self.productions)

    def generates(self, tokens: Sequence) -> bool:
        """CYK membership of ``tokens`` in the generated language."""
        if self._cnf is None:
            self._cnf = to_cnf(self)
        return self._cnf.generates(tokens)


@dataclass
class CnfGrammar:
    """Chomsky normal form: terminal rules A -> t and binary rules A -> B C."""

    start: str
    nullable_start: bool
    term_rules: dict[str, set]
    bin_rules: dict[str, set[tuple[str, str]]]

    def generates(self, tokens: Sequence) -> bool:
        n = len(tokens)
        if n == 0:
            return self.nullable_start
        # table[i][l] = set of nonterminals deriving tokens[i : i + l]
        table = [[set() for _ in range(n + 1)] for _ in range(n)]
        for i, t in enumerate(tokens):
            for nt, terms in self.term_rules.items():
                if t in terms:
                    table[i][1].add(nt)
        for length in range(2, n + 1):
            for i in range(n - length + 1):
                cell = table[i][length]
                for split in range(1, length):
                    left = table[i][split]
                    right = table[i + split][length - split]
                    if not left or not right:
                        continue
                    for nt, pairs in self.bin_rules.items():
                        if nt in cell:
                            continue
                        for b, c in pairs:
                            if b in left and c in right:
                                cell.add(nt)
                                break
        return self.start in table[0][n]


def to_cnf(g: Grammar) -> CnfGrammar:
    """Standard conversion: fresh start, epsilon removal, unit removal, binarization."""
    nts = set(g.productions)
    start = _fresh("S", nts)
    nts.add(start)
    prods: dict[str, set[tuple]] = {nt: set(map(tuple, rhss)) for nt, rhss in g.productions.items()}
    prods[start] = {(g.start,)}

    nullable = _nullable_set(prods, nts)
    prods = _remove_epsilons(prods, nts, nullable)
    prods = _remove_units(prods, nts)

    term_rules: dict[str, set] = {}
    bin_rules: dict[str, set[tuple[str, str]]] = {}
    lifted: dict[object, str] = {}
    counter = itertools.count()

    def lift(term) -> str:
        if term not in lifted:
            name = f"@t{next(counter)}"
            lifted[term] = name
            term_rules.setdefault(name, set()).add(term)
        return lifted[term]

    for nt, rhss in prods.items():
        for rhs in rhss:
            if len(rhs) == 1:
                term_rules.setdefault(nt, set()).add(rhs[0])
                continue
            symbols = [s if isinstance(s, str) and s in nts else lift(s) for s in rhs]
            head = nt
            while len(symbols) > 2:
                fresh = f"@b{next(counter)}"
                bin_rules.setdefault(head, set()).add((symbols[0], fresh))
                head = fresh
                symbols = symbols[1:]
            bin_rules.setdefault(head, set()).add((symbols[0], symbols[1]))

    return CnfGrammar(start, g.start in nullable, term_rules, bin_rules)


def _fresh(base: str, taken: set[str]) -> str:
    name = f"@{base}"
    while name in taken:
        name += "'"
    return name


def _nullable_set(prods, nts) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for nt, rhss in prods.items():
            if nt in nullable:
                continue
            for rhs in rhss:
                if all(isinstance(s, str) and s in nts and s in nullable for s in rhs):
                    nullable.add(nt)
                    changed = True
                    break
    return nullable


def _remove_epsilons(prods, nts, nullable):
    out: dict[str, set[tuple]] = {nt: set() for nt in prods}
    for nt, rhss in prods.items():
        for rhs in rhss:
            optional = [i for i, s in enumerate(rhs) if isinstance(s, str) and s in nts and s in nullable]
            for dropped in _subsets(optional):
                variant = tuple(s for i, s in enumerate(rhs) if i not in dropped)
                if variant:
                    out[nt].add(variant)
    return out


def _subsets(items):
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield set(combo)


def _remove_units(prods, nts):
    # unit_reach[A] = all B such that A =>* B via unit productions
    unit_reach = {nt: {nt} for nt in prods}
    changed = True
    while changed:
        changed = False
        for nt in prods:
            for target in list(unit_reach[nt]):
                for rhs in prods.get(target, ()):
                    if len(rhs) == 1 and isinstance(rhs[0], str) and rhs[0] in nts:
                        if rhs[0] not in unit_reach[nt]:
                            unit_reach[nt].add(rhs[0])
                            changed = True
    out: dict[str, set[tuple]] = {nt: set() for nt in prods}
    for nt in prods:
        for target in unit_reach[nt]:
            for rhs in prods.get(target, ()):
                if len(rhs) == 1 and isinstance(rhs[0], str) and rhs[0] in nts:
                    continue
                out[nt].add(rhs)
    return out
