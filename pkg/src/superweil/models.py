"""Degree-truncated graded algebra models.

Three monomial engines share one interface: super-commutative polynomial
monomials, free words, and PBW-ordered monomials with bracket rewriting.
Each exposes its basis as a SuperVectorSpace (sorted by degree, then by a
canonical monomial key), multiplies basis elements with exact Koszul
signs, and extends letter data to operators:

  * derivation(images, parity): the unique super-derivation with the given
    letter images, assembled column by column via prefix·image·suffix
    products (so every sign comes from the product routine, never from an
    ad-hoc formula);
  * algebra_morphism(src, tgt, images): the multiplicative extension of
    letter images, used for abelianization, Chern-Weil and quantization
    maps.

Products that would leave the truncation are undefined, not zero; callers
see that as BudgetError (mul) or as absent columns (operators).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, ValidationError
from .scalars import HALF, ONE, QQ
from .superlin import GradedMorphism, SuperVectorSpace

UNIT_LETTER = -1  # bracket-table target standing for the algebra unit


def add_into(acc: dict, key, coeff):
    if not coeff:
        return
    cur = acc.get(key)
    if cur is None:
        acc[key] = coeff
    else:
        cur = cur + coeff
        if cur:
            acc[key] = cur
        else:
            del acc[key]


def scale_into(acc: dict, other: dict, coeff):
    for k, v in other.items():
        add_into(acc, k, coeff * v)


@dataclass(frozen=True)
class Letter:
    name: str
    parity: int
    degree: int


class GradedAlgebra:
    """Shared behaviour of the truncated monomial algebras."""

    space: SuperVectorSpace
    letters_info: list
    truncation: int | None
    unit_index: int = 0

    # subclass interface ----------------------------------------------------
    def word_of(self, index: int) -> tuple:
        raise NotImplementedError

    def index_of_word(self, word: tuple) -> int:
        raise NotImplementedError

    def mul_basis(self, i: int, j: int):
        """Product of two basis monomials as {index: coeff}; None = out of budget."""
        raise NotImplementedError

    # shared -----------------------------------------------------------------
    @property
    def dim(self):
        return self.space.dim

    def unit_element(self) -> dict:
        return {self.unit_index: ONE}

    def letter_element(self, g: int) -> dict:
        return {self.index_of_word((g,)): ONE}

    def degree(self, i: int) -> int:
        return self.space.degrees[i]

    def parity(self, i: int) -> int:
        return self.space.parities[i]

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, ci in u.items():
            for j, cj in v.items():
                prod = self.mul_basis(i, j)
                if prod is None:
                    raise BudgetError(
                        f"product of degrees {self.degree(i)} and {self.degree(j)} "
                        f"exceeds truncation {self.truncation}"
                    )
                scale_into(out, prod, ci * cj)
        return out

    def mul_words(self, items) -> dict:
        """Left-fold product of elements; unit for the empty list."""
        acc = self.unit_element()
        for x in items:
            acc = self.mul(acc, x)
        return acc

    def derivation(self, images: list, parity: int) -> GradedMorphism:
        """Super-derivation of the given parity with D(letter g) = images[g].

        Column for a monomial with canonical word (g_1..g_k):
        Σ_pos (-1)^{parity·(p_{g_1}+...+p_{g_{pos-1}})} g_1..D(g_pos)..g_k,
        every term evaluated with the algebra product.  Columns whose image
        could leave the truncation are not stored (src_max_degree marks it).
        """
        shift = 0
        for g, img in enumerate(images):
            if img:
                top = max(self.degree(i) for i in img)
                shift = max(shift, top - self.letters_info[g].degree)
        limit = None
        if self.truncation is not None and shift > 0:
            limit = self.truncation - shift
        cols = []
        degs = self.space.degrees
        for m in range(self.dim):
            if limit is not None and degs[m] > limit:
                cols.append({})
                continue
            word = self.word_of(m)
            acc: dict = {}
            sign = ONE
            for pos, g in enumerate(word):
                img = images[g]
                if img:
                    prefix = self.index_of_word(word[:pos])
                    suffix = self.index_of_word(word[pos + 1:])
                    term: dict = {}
                    for t, c in img.items():
                        part = self.mul_basis(prefix, t)
                        for s, cs in part.items():
                            more = self.mul_basis(s, suffix)
                            scale_into(term, more, c * cs)
                    scale_into(acc, term, sign)
                if parity and self.letters_info[g].parity:
                    sign = -sign
            cols.append(acc)
        return GradedMorphism(self.space, self.space, parity, cols,
                              src_max_degree=limit, validate=False)


def _sorted_space(monomials, name_fn, parity_fn, degree_fn, key_fn):
    order = sorted(monomials, key=lambda m: (degree_fn(m), key_fn(m)))
    names = [name_fn(m) for m in order]
    parities = [parity_fn(m) for m in order]
    degrees = [degree_fn(m) for m in order]
    return order, SuperVectorSpace(names, parities, degrees)


def _monomial_name(letters, word) -> str:
    if not word:
        return "1"
    parts = []
    run_letter, run = None, 0
    for g in list(word) + [None]:
        if g == run_letter:
            run += 1
            continue
        if run_letter is not None:
            parts.append(letters[run_letter].name + (f"^{run}" if run > 1 else ""))
        run_letter, run = g, 1
    return "*".join(parts)


# ---------------------------------------------------------------------------
# super-commutative polynomial monomials


class CommutativeModel(GradedAlgebra):
    """Super-commutative monomials in weighted letters, truncated by degree.

    Odd letters square to zero; the basis is all exponent vectors with odd
    exponents ≤ 1 and weighted degree ≤ N.
    """

    def __init__(self, letters, truncation):
        self.letters_info = [Letter(*l) if not isinstance(l, Letter) else l
                             for l in letters]
        self.truncation = truncation
        words = [()]
        for g, info in enumerate(self.letters_info):
            grown = []
            for w in words:
                base = sum(self.letters_info[x].degree for x in w)
                reps = 1 if info.parity else (
                    (truncation - base) // info.degree if info.degree else 0)
                e = 0
                while e <= reps and base + e * info.degree <= truncation:
                    grown.append(w + (g,) * e)
                    e += 1
            words = grown
        self._words, self.space = _sorted_space(
            words,
            lambda w: _monomial_name(self.letters_info, w),
            lambda w: sum(self.letters_info[g].parity for g in w) % 2,
            lambda w: sum(self.letters_info[g].degree for g in w),
            lambda w: w,
        )
        self._index = {w: i for i, w in enumerate(self._words)}

    def word_of(self, index):
        return self._words[index]

    def index_of_word(self, word):
        return self._index[tuple(sorted(word))]

    def merge_sign(self, w1, w2):
        """Koszul sign for sorting the concatenation w1+w2 (None if it dies)."""
        sign = ONE
        par = [self.letters_info[g].parity for g in w2]
        odd_positions = [g for g in w1 if self.letters_info[g].parity]
        for g, p in zip(w2, par):
            if p:
                crossings = sum(1 for hx in odd_positions if hx > g)
                if crossings % 2:
                    sign = -sign
                if g in odd_positions:
                    return None
                odd_positions.append(g)
        return sign

    def mul_basis(self, i, j):
        w1, w2 = self._words[i], self._words[j]
        deg = self.space.degrees[i] + self.space.degrees[j]
        if self.truncation is not None and deg > self.truncation:
            return None
        sign = self.merge_sign(w1, w2)
        if sign is None:
            return {}
        merged = tuple(sorted(w1 + w2))
        return {self._index[merged]: sign}


# ---------------------------------------------------------------------------
# free words


class FreeModel(GradedAlgebra):
    """All words in weighted letters up to the degree truncation."""

    def __init__(self, letters, truncation):
        self.letters_info = [Letter(*l) if not isinstance(l, Letter) else l
                             for l in letters]
        self.truncation = truncation
        words = [()]
        frontier = [()]
        while frontier:
            nxt = []
            for w in frontier:
                base = sum(self.letters_info[x].degree for x in w)
                for g, info in enumerate(self.letters_info):
                    if base + info.degree <= truncation:
                        nxt.append(w + (g,))
            words.extend(nxt)
            frontier = nxt
        self._words, self.space = _sorted_space(
            words,
            lambda w: _monomial_name(self.letters_info, w),
            lambda w: sum(self.letters_info[g].parity for g in w) % 2,
            lambda w: sum(self.letters_info[g].degree for g in w),
            lambda w: w,
        )
        self._index = {w: i for i, w in enumerate(self._words)}

    def word_of(self, index):
        return self._words[index]

    def index_of_word(self, word):
        return self._index[tuple(word)]

    def mul_basis(self, i, j):
        deg = self.space.degrees[i] + self.space.degrees[j]
        if self.truncation is not None and deg > self.truncation:
            return None
        return {self._index[self._words[i] + self._words[j]]: ONE}


# ---------------------------------------------------------------------------
# PBW monomials with rewriting


class PBWModel(GradedAlgebra):
    """Ordered monomials in letters subject to [g,h] super-commutation rules.

    brackets[(g,h)] is the element {letter: coeff, UNIT_LETTER: coeff}
    equal to the super-commutator of letters g and h; it must be supplied
    for every ordered pair (including (g,g) for odd letters, whose squares
    rewrite to half the bracket).  Monomials are nondecreasing letter
    words, odd letters without repetition, filtered by weighted degree.
    """

    def __init__(self, letters, brackets, truncation):
        self.letters_info = [Letter(*l) if not isinstance(l, Letter) else l
                             for l in letters]
        self.brackets = brackets
        self.truncation = truncation
        words = [()]
        for g, info in enumerate(self.letters_info):
            grown = []
            for w in words:
                base = sum(self.letters_info[x].degree for x in w)
                e = 0
                while base + e * info.degree <= truncation and (e == 0 or not info.parity or e <= 1):
                    grown.append(w + (g,) * e)
                    e += 1
            words = grown
        self._words, self.space = _sorted_space(
            words,
            lambda w: _monomial_name(self.letters_info, w),
            lambda w: sum(self.letters_info[g].parity for g in w) % 2,
            lambda w: sum(self.letters_info[g].degree for g in w),
            lambda w: w,
        )
        self._index = {w: i for i, w in enumerate(self._words)}
        self._nf_cache: dict = {}
        self._mul_cache: dict = {}

    def word_of(self, index):
        return self._words[index]

    def index_of_word(self, word):
        return self._index[tuple(word)]

    def _bracket_as_words(self, g, h) -> dict:
        out = {}
        for t, c in self.brackets.get((g, h), {}).items():
            out[() if t == UNIT_LETTER else (t,)] = c
        return out

    def _is_normal(self, word) -> bool:
        for a, b in zip(word, word[1:]):
            if a > b:
                return False
            if a == b and self.letters_info[a].parity:
                return False
        return True

    def normal_form(self, word, strategy="left") -> dict:
        """Rewrite a word to a combination of PBW monomials.

        Terminates because each step either lowers the weighted degree
        (bracket substitution, odd square) or keeps the degree and strictly
        lowers the inversion count (swap).  `strategy` picks the leftmost
        or rightmost reducible position; both must agree (confluence).
        """
        word = tuple(word)
        key = (word, strategy)
        cached = self._nf_cache.get(key)
        if cached is not None:
            return cached
        if self._is_normal(word):
            result = {word: ONE}
            self._nf_cache[key] = result
            return result
        positions = range(len(word) - 1)
        if strategy == "right":
            positions = reversed(positions)
        pos = None
        for i in positions:
            a, b = word[i], word[i + 1]
            if a > b or (a == b and self.letters_info[a].parity):
                pos = i
                break
        a, b = word[pos], word[pos + 1]
        out: dict = {}
        if a == b:
            # odd square: g·g = ½[g,g]
            for sub, c in self._bracket_as_words(a, a).items():
                rest = self.normal_form(word[:pos] + sub + word[pos + 2:], strategy)
                scale_into(out, rest, HALF * c)
        else:
            pa = self.letters_info[a].parity
            pb = self.letters_info[b].parity
            sign = -ONE if (pa and pb) else ONE
            swapped = word[:pos] + (b, a) + word[pos + 2:]
            scale_into(out, self.normal_form(swapped, strategy), sign)
            for sub, c in self._bracket_as_words(a, b).items():
                rest = self.normal_form(word[:pos] + sub + word[pos + 2:], strategy)
                scale_into(out, rest, c)
        self._nf_cache[key] = out
        return out

    def reduce_to_basis(self, word, strategy="left") -> dict:
        return {self._index[w]: c for w, c in self.normal_form(word, strategy).items()}

    def mul_basis(self, i, j):
        deg = self.space.degrees[i] + self.space.degrees[j]
        if self.truncation is not None and deg > self.truncation:
            return None
        cached = self._mul_cache.get((i, j))
        if cached is None:
            cached = self.reduce_to_basis(self._words[i] + self._words[j])
            self._mul_cache[i, j] = cached
        return cached

    def adjoint_operator(self, g: int) -> GradedMorphism:
        """[letter_g, ·] as a super-derivation built from the bracket table."""
        images = []
        for h in range(len(self.letters_info)):
            img = {}
            for t, c in self.brackets.get((g, h), {}).items():
                idx = self.unit_index if t == UNIT_LETTER else self.index_of_word((t,))
                add_into(img, idx, c)
            images.append(img)
        return self.derivation(images, self.letters_info[g].parity)


# ---------------------------------------------------------------------------
# tensor products


class TensorProductAlgebra(GradedAlgebra):
    """A ⊗ B for two truncated algebras, cut at total degree `truncation`.

    (a1⊗b1)(a2⊗b2) = (-1)^{|b1||a2|} a1a2 ⊗ b1b2.  Operators on the factors
    extend via extend_left / extend_right with the usual Koszul sign.
    """

    def __init__(self, left: GradedAlgebra, right: GradedAlgebra, truncation):
        self.left = left
        self.right = right
        self.truncation = truncation
        self.letters_info = []  # not letter-generated; derivation() unused
        pairs = [
            (i, j)
            for i in range(left.dim)
            for j in range(right.dim)
            if left.degree(i) + right.degree(j) <= truncation
        ]
        self._pairs, self.space = _sorted_space(
            pairs,
            lambda p: f"{left.space.names[p[0]]}⊗{right.space.names[p[1]]}",
            lambda p: (left.parity(p[0]) + right.parity(p[1])) % 2,
            lambda p: left.degree(p[0]) + right.degree(p[1]),
            lambda p: p,
        )
        self._index = {p: i for i, p in enumerate(self._pairs)}
        self.unit_index = self._index[left.unit_index, right.unit_index]

    def pair_of(self, index):
        return self._pairs[index]

    def index_of_pair(self, i, j):
        return self._index[i, j]

    def mul_basis(self, m, n):
        deg = self.space.degrees[m] + self.space.degrees[n]
        if deg > self.truncation:
            return None
        a1, b1 = self._pairs[m]
        a2, b2 = self._pairs[n]
        sign = -ONE if (self.right.parity(b1) and self.left.parity(a2)) else ONE
        pa = self.left.mul_basis(a1, a2)
        pb = self.right.mul_basis(b1, b2)
        if pa is None or pb is None:
            return None
        out = {}
        for i, ci in pa.items():
            for j, cj in pb.items():
                add_into(out, self._index[i, j], sign * ci * cj)
        return out

    def include_left(self, element: dict) -> dict:
        return {self._index[i, self.right.unit_index]: c for i, c in element.items()}

    def include_right(self, element: dict) -> dict:
        return {self._index[self.left.unit_index, j]: c for j, c in element.items()}

    def extend_left(self, op: GradedMorphism) -> GradedMorphism:
        """op⊗1 on the pair basis."""
        cols = []
        limit = self._extended_limit(op, left_side=True)
        degs = self.space.degrees
        for m, (a, b) in enumerate(self._pairs):
            if limit is not None and degs[m] > limit:
                cols.append({})
                continue
            col = {}
            for i, v in op.cols[a].items():
                key = self._index.get((i, b))
                if key is None:
                    raise ValidationError("operator image leaves the tensor truncation")
                col[key] = v
            cols.append(col)
        return GradedMorphism(self.space, self.space, op.parity, cols,
                              src_max_degree=limit, validate=False)

    def extend_right(self, op: GradedMorphism) -> GradedMorphism:
        """1⊗op with sign (-1)^{|op||a|} on a⊗b."""
        cols = []
        limit = self._extended_limit(op, left_side=False)
        degs = self.space.degrees
        for m, (a, b) in enumerate(self._pairs):
            if limit is not None and degs[m] > limit:
                cols.append({})
                continue
            sign = -ONE if (op.parity and self.left.parity(a)) else ONE
            col = {}
            for j, v in op.cols[b].items():
                key = self._index.get((a, j))
                if key is None:
                    raise ValidationError("operator image leaves the tensor truncation")
                col[key] = sign * v
            cols.append(col)
        return GradedMorphism(self.space, self.space, op.parity, cols,
                              src_max_degree=limit, validate=False)

    def _extended_limit(self, op, left_side):
        limit = None
        if op.shift_bound > 0:
            limit = self.truncation - op.shift_bound
        if op.src_max_degree is not None:
            factor = self.left if left_side else self.right
            other = self.right if left_side else self.left
            other_min = min(other.space.degrees) if other.dim else 0
            cand = op.src_max_degree + other_min
            # a pair column is defined iff the factor column is defined;
            # with factor degree ≤ op.src_max the pair degree is at most
            # op.src_max + (other part), so cut conservatively:
            limit = cand if limit is None else min(limit, cand)
        return limit


# ---------------------------------------------------------------------------
# multiplicative extension of letter images


def algebra_morphism(src: GradedAlgebra, tgt: GradedAlgebra,
                     letter_images: list, fold="left") -> GradedMorphism:
    """The algebra map src → tgt fixed by images of the letters.

    Columns are products of letter images along each monomial's canonical
    word; `fold` picks the association order (used to cross-check that the
    result is association-independent, i.e. genuinely multiplicative).
    """
    cols = []
    parity = 0
    for m in range(src.dim):
        word = src.word_of(m)
        factors = [letter_images[g] for g in word]
        if fold == "left":
            acc = tgt.mul_words(factors)
        else:
            acc = _fold_right(tgt, factors)
        cols.append(acc)
    return GradedMorphism(src.space, tgt.space, parity, cols, validate=False)


def _fold_right(tgt, factors):
    acc = tgt.unit_element()
    for x in reversed(factors):
        acc = tgt.mul(x, acc)
    return acc
