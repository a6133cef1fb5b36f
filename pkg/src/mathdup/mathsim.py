"""Math channel: feature histograms, order-observing identifier similarity,
formula trees with commutative canonicalization, and reuse classification.

The reuse categories cover the spectrum from verbatim formula copies to
reordered or re-notated math; `different_concepts` exists in the taxonomy
but is reserved for human reviewers and never assigned automatically.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping, Sequence

from .errors import MalformedTree
from .lcs import lcs_ratio

if TYPE_CHECKING:
    from .corpus import Document, Formula, MathToken

REUSE_CATEGORIES = frozenset(
    {
        "identical",
        "equivalent",
        "order_changes",
        "different_presentation",
        "splits_or_merges",
        "different_concepts",  # human-only label
        "unrelated",
    }
)

DEFAULT_COMMUTATIVE_OPS = frozenset({"+", "·", "=", "∪", "∩"})

# Synonym spellings normalized before any structural comparison.
_OPERATOR_SYNONYMS = {
    "*": "·",
    "×": "·",
    "\\cdot": "·",
    "\\times": "·",
    "\\cup": "∪",
    "\\cap": "∩",
    "\\le": "≤",
    "\\leq": "≤",
    "\\ge": "≥",
    "\\geq": "≥",
    "\\ne": "≠",
    "\\neq": "≠",
    "\\pm": "±",
    "\\div": "÷",
    "−": "-",
}

_OPEN = {"(", "[", "{", "\\left(", "\\left[", "\\left\\{"}
_CLOSE = {")", "]", "}", "\\right)", "\\right]", "\\right\\}"}

# Binding powers; higher binds tighter. Right-associative ops re-use their
# own power for the right operand.
_RELATION_BP = 10
_SET_BP = 15
_ADDITIVE_BP = 20
_MULTIPLICATIVE_BP = 30
_PREFIX_BP = 35
_POWER_BP = 40
_SUBSCRIPT_BP = 50

_BINARY_BP = {
    "=": _RELATION_BP,
    "≠": _RELATION_BP,
    "<": _RELATION_BP,
    ">": _RELATION_BP,
    "≤": _RELATION_BP,
    "≥": _RELATION_BP,
    "≈": _RELATION_BP,
    "≡": _RELATION_BP,
    "∈": _RELATION_BP,
    "⊂": _RELATION_BP,
    "⊆": _RELATION_BP,
    "∪": _SET_BP,
    "∩": _SET_BP,
    "+": _ADDITIVE_BP,
    "-": _ADDITIVE_BP,
    "±": _ADDITIVE_BP,
    "·": _MULTIPLICATIVE_BP,
    "/": _MULTIPLICATIVE_BP,
    "÷": _MULTIPLICATIVE_BP,
    "^": _POWER_BP,
    "_": _SUBSCRIPT_BP,
}
_RIGHT_ASSOC = {"^"}
_PREFIX_OPS = {"-", "+"}


@dataclass(frozen=True)
class MathFeatureVector:
    identifier_freq: dict[str, int]
    operator_freq: dict[str, int]
    number_freq: dict[str, int]
    identifier_seq: tuple[str, ...]


@dataclass(frozen=True)
class FormulaNode:
    kind: str  # "apply" | "identifier" | "number"
    value: str
    children: tuple["FormulaNode", ...] = ()


def apply_node(op: str, *children: FormulaNode) -> FormulaNode:
    if not children:
        raise MalformedTree(f"apply node {op!r} needs at least one child")
    return FormulaNode("apply", op, tuple(children))


def identifier_node(name: str) -> FormulaNode:
    return FormulaNode("identifier", name)


def number_node(literal: str) -> FormulaNode:
    return FormulaNode("number", literal)


def validate_tree(node: FormulaNode) -> None:
    if node.kind in ("identifier", "number"):
        if node.children:
            raise MalformedTree(f"{node.kind} node {node.value!r} must be a leaf")
    elif node.kind == "apply":
        if not node.children:
            raise MalformedTree(f"apply node {node.value!r} has no children")
        for child in node.children:
            validate_tree(child)
    else:
        raise MalformedTree(f"unknown node kind {node.kind!r}")


def tree_from_json(data) -> FormulaNode:
    """Nested JSON form: {"op": ..., "args": [...]}, {"id": ...}, {"num": ...}."""
    if not isinstance(data, dict):
        raise MalformedTree("expected object")
    if "id" in data:
        return identifier_node(str(data["id"]))
    if "num" in data:
        return number_node(str(data["num"]))
    if "op" in data:
        args = data.get("args")
        if not isinstance(args, list) or not args:
            raise MalformedTree(f"op {data['op']!r} needs a nonempty args list")
        return apply_node(str(data["op"]), *(tree_from_json(a) for a in args))
    raise MalformedTree(f"unrecognized node keys {sorted(data)}")


def tree_to_json(node: FormulaNode):
    if node.kind == "identifier":
        return {"id": node.value}
    if node.kind == "number":
        return {"num": node.value}
    return {"op": node.value, "args": [tree_to_json(c) for c in node.children]}


def serialize_tree(node: FormulaNode) -> str:
    if node.kind == "identifier":
        return f"i:{node.value}"
    if node.kind == "number":
        return f"n:{node.value}"
    return "(" + node.value + " " + " ".join(serialize_tree(c) for c in node.children) + ")"


class FormulaParseError(MalformedTree):
    pass


class _FormulaParser:
    """Pratt parser over math tokens. Adjacent operands multiply implicitly;
    structural tokens shape the tree but never appear in it."""

    def __init__(self, tokens: Sequence["MathToken"]):
        self.toks = []
        for t in tokens:
            if t.kind == "structural":
                if t.value in _OPEN:
                    self.toks.append(("open", t.value))
                elif t.value in _CLOSE:
                    self.toks.append(("close", t.value))
                # other structural tokens are formatting; drop them
            elif t.kind == "operator":
                self.toks.append(("operator", _OPERATOR_SYNONYMS.get(t.value, t.value)))
            elif t.kind in ("identifier", "number"):
                self.toks.append((t.kind, t.value))
            else:
                raise FormulaParseError(f"unknown token kind {t.kind!r}")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise FormulaParseError("unexpected end of formula")
        self.pos += 1
        return tok

    def parse(self) -> FormulaNode:
        if not self.toks:
            raise FormulaParseError("empty formula")
        node = self.expr(0)
        if self.peek() is not None:
            raise FormulaParseError(f"trailing token {self.peek()[1]!r}")
        return node

    def primary(self) -> FormulaNode:
        kind, value = self.next()
        if kind == "identifier":
            return identifier_node(value)
        if kind == "number":
            return number_node(value)
        if kind == "open":
            node = self.expr(0)
            closing = self.peek()
            if closing is None or closing[0] != "close":
                raise FormulaParseError("unbalanced bracket")
            self.next()
            return node
        if kind == "operator" and value in _PREFIX_OPS:
            operand = self.expr(_PREFIX_BP)
            if value == "+":
                return operand
            return apply_node("neg", operand)
        raise FormulaParseError(f"unexpected token {value!r}")

    def expr(self, min_bp: int) -> FormulaNode:
        left = self.primary()
        while True:
            tok = self.peek()
            if tok is None or tok[0] == "close":
                return left
            kind, value = tok
            if kind == "operator":
                bp = _BINARY_BP.get(value)
                if bp is None:
                    raise FormulaParseError(f"operator {value!r} has no infix rule")
                if bp < min_bp:
                    return left
                self.next()
                rhs_bp = bp if value in _RIGHT_ASSOC else bp + 1
                left = apply_node(value, left, self.expr(rhs_bp))
            else:
                # operand or open bracket follows an operand: implicit product
                if _MULTIPLICATIVE_BP < min_bp:
                    return left
                left = apply_node("·", left, self.expr(_MULTIPLICATIVE_BP + 1))


def parse_formula_tokens(tokens: Sequence["MathToken"]) -> FormulaNode:
    """Parse a formula token list to a tree; raises FormulaParseError when
    the token stream has no well-formed reading."""
    return _FormulaParser(tokens).parse()


def try_parse_formula(formula: "Formula") -> FormulaNode | None:
    try:
        return parse_formula_tokens(formula.tokens)
    except MalformedTree:
        return None


def tree_to_tokens(node: FormulaNode) -> list["MathToken"]:
    """Render a tree back to a token list that reparses to an equivalent
    tree (compound children are parenthesized)."""
    from .corpus import MathToken

    out: list[MathToken] = []

    def wrap(child: FormulaNode):
        if child.kind == "apply":
            out.append(MathToken("structural", "("))
            emit(child)
            out.append(MathToken("structural", ")"))
        else:
            emit(child)

    def emit(n: FormulaNode):
        if n.kind == "identifier":
            out.append(MathToken("identifier", n.value))
        elif n.kind == "number":
            out.append(MathToken("number", n.value))
        elif n.value == "neg" and len(n.children) == 1:
            out.append(MathToken("operator", "-"))
            wrap(n.children[0])
        else:
            for i, child in enumerate(n.children):
                if i:
                    out.append(MathToken("operator", n.value))
                wrap(child)

    emit(node)
    return out


def canonicalize_formula(
    node: FormulaNode, commutative: frozenset[str] = DEFAULT_COMMUTATIVE_OPS
) -> FormulaNode:
    """Normal form under commutativity and associativity of the configured
    operators: same-operator nests are flattened and children sorted by
    their canonical serialization. Idempotent; leaf multiset preserved.

    Distributivity is deliberately not expanded: expansion explodes tree
    size and is not confluent with factoring, so distributive variants stay
    distinct.
    """
    validate_tree(node)
    return _canon(node, commutative)


def _canon(node: FormulaNode, commutative: frozenset[str]) -> FormulaNode:
    if node.kind != "apply":
        return node
    children = [_canon(c, commutative) for c in node.children]
    if node.value in commutative:
        flat: list[FormulaNode] = []
        for child in children:
            if child.kind == "apply" and child.value == node.value:
                flat.extend(child.children)
            else:
                flat.append(child)
        flat.sort(key=serialize_tree)
        children = flat
    return FormulaNode("apply", node.value, tuple(children))


def extract_features(doc: "Document") -> MathFeatureVector:
    """Identifier/operator/number histograms over all formulae in document
    order, plus the reading-order identifier sequence."""
    identifiers: Counter[str] = Counter()
    operators: Counter[str] = Counter()
    numbers: Counter[str] = Counter()
    seq: list[str] = []
    for formula in doc.formulae:
        for tok in formula.tokens:
            if tok.kind == "identifier":
                identifiers[tok.value] += 1
                seq.append(tok.value)
            elif tok.kind == "operator":
                operators[_OPERATOR_SYNONYMS.get(tok.value, tok.value)] += 1
            elif tok.kind == "number":
                numbers[tok.value] += 1
    return MathFeatureVector(
        identifier_freq=dict(identifiers),
        operator_freq=dict(operators),
        number_freq=dict(numbers),
        identifier_seq=tuple(seq),
    )


def cosine_similarity(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[key] for key, count in a.items() if key in b)
    norm_a = math.sqrt(sum(v * v for v in a.values()))
    norm_b = math.sqrt(sum(v * v for v in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return min(1.0, dot / (norm_a * norm_b))


def histogram_similarity(a: MathFeatureVector, b: MathFeatureVector) -> float:
    """Cosine over identifier frequency vectors (scale-free, so relative
    and absolute frequencies give the same value)."""
    return cosine_similarity(a.identifier_freq, b.identifier_freq)


def identifier_sequence_similarity(a: MathFeatureVector, b: MathFeatureVector) -> float:
    """LCS of the identifier sequences over the longer length; the
    order-observing counterpart to histogram_similarity."""
    return lcs_ratio(a.identifier_seq, b.identifier_seq)


@dataclass(frozen=True)
class MathReuseLabel:
    category: str
    evidence: tuple[tuple[int, int], ...]  # (formula index in a, formula index in b)


def _token_key(formula: "Formula") -> tuple[tuple[str, str], ...]:
    return tuple((t.kind, t.value) for t in formula.tokens)


def _find_split_pairs(
    keys_a: list[tuple], keys_b: list[tuple]
) -> list[tuple[int, int]]:
    """Pairs where one side's single formula equals the concatenation of a
    run of >= 2 consecutive formulae on the other side."""
    pairs: set[tuple[int, int]] = set()

    def scan(singles, runs, flip):
        run_lengths = [len(k) for k in runs]
        for i, key in enumerate(singles):
            target = len(key)
            for j in range(len(runs)):
                total = 0
                for m in range(j, len(runs)):
                    total += run_lengths[m]
                    if total > target:
                        break
                    if total == target and m > j:
                        concat = tuple(t for k in runs[j : m + 1] for t in k)
                        if concat == key:
                            for jj in range(j, m + 1):
                                pairs.add((jj, i) if flip else (i, jj))
    scan(keys_a, keys_b, flip=False)
    scan(keys_b, keys_a, flip=True)
    return sorted(pairs)


def classify_math_reuse(a: "Document", b: "Document") -> MathReuseLabel:
    """Decision cascade over the two documents' formula lists.

    identical: equal raw token sequences, in order.
    different_presentation: equal parse trees (structure survives, markup
        differs), in order.
    equivalent: equal canonical trees, in order.
    splits_or_merges: a contiguous run of formulae on one side concatenates
        to a single formula on the other.
    order_changes: equal canonical multisets, different document order.
    Otherwise the strongest pairwise match level, or unrelated.
    different_concepts is never assigned here.
    """
    formulae_a, formulae_b = a.formulae, b.formulae
    if not formulae_a or not formulae_b:
        return MathReuseLabel("unrelated", ())

    keys_a = [_token_key(f) for f in formulae_a]
    keys_b = [_token_key(f) for f in formulae_b]
    aligned = tuple((i, i) for i in range(len(keys_a)))
    if keys_a == keys_b:
        return MathReuseLabel("identical", aligned)

    trees_a = [try_parse_formula(f) for f in formulae_a]
    trees_b = [try_parse_formula(f) for f in formulae_b]
    all_parsed = all(t is not None for t in trees_a + trees_b)
    if all_parsed and len(trees_a) == len(trees_b) and trees_a == trees_b:
        return MathReuseLabel("different_presentation", aligned)

    canon_a = [serialize_tree(_canon(t, DEFAULT_COMMUTATIVE_OPS)) if t else None for t in trees_a]
    canon_b = [serialize_tree(_canon(t, DEFAULT_COMMUTATIVE_OPS)) if t else None for t in trees_b]
    if all_parsed and len(canon_a) == len(canon_b) and canon_a == canon_b:
        return MathReuseLabel("equivalent", aligned)

    split_pairs = _find_split_pairs(keys_a, keys_b)
    if split_pairs:
        return MathReuseLabel("splits_or_merges", tuple(split_pairs))

    if all_parsed and Counter(canon_a) == Counter(canon_b):
        used: set[int] = set()
        evidence = []
        for i, key in enumerate(canon_a):
            for j, other in enumerate(canon_b):
                if j not in used and other == key:
                    used.add(j)
                    evidence.append((i, j))
                    break
        return MathReuseLabel("order_changes", tuple(evidence))

    return _pairwise_fallback(keys_a, keys_b, trees_a, trees_b, canon_a, canon_b)


def _pairwise_fallback(keys_a, keys_b, trees_a, trees_b, canon_a, canon_b) -> MathReuseLabel:
    used_a: set[int] = set()
    used_b: set[int] = set()
    matched: list[tuple[int, int]] = []
    strongest: str | None = None

    def level_pairs(equal) -> list[tuple[int, int]]:
        found = []
        for i in range(len(keys_a)):
            if i in used_a:
                continue
            for j in range(len(keys_b)):
                if j in used_b:
                    continue
                if equal(i, j):
                    used_a.add(i)
                    used_b.add(j)
                    found.append((i, j))
                    break
        return found

    for category, equal in (
        ("identical", lambda i, j: keys_a[i] == keys_b[j]),
        (
            "different_presentation",
            lambda i, j: trees_a[i] is not None and trees_a[i] == trees_b[j],
        ),
        (
            "equivalent",
            lambda i, j: canon_a[i] is not None and canon_a[i] == canon_b[j],
        ),
    ):
        found = level_pairs(equal)
        if found and strongest is None:
            strongest = category
        matched.extend(found)

    if strongest is None:
        return MathReuseLabel("unrelated", ())
    return MathReuseLabel(strongest, tuple(sorted(matched)))
