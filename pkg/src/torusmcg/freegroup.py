"""Exact computation in finitely generated free groups.

Words are tuples of nonzero ints: ``k`` stands for the k-th generator
(1-based) and ``-k`` for its inverse.  All operations keep words freely
reduced.  Conjugacy classes are represented by a canonical rotation of
the cyclically reduced core.

The concrete groups used elsewhere are fundamental groups of punctured
tori, free of rank n+1 with basis A, B_1, ..., B_n (letter 1 is A,
letter 1+i is B_i).
"""

from itertools import product


def reduce_word(letters):
    """Freely reduce a sequence of letters; returns a tuple."""
    out = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def mul(*words):
    """Product of already-reduced words, reduced."""
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(word, k):
    if k < 0:
        return power(invert_word(word), -k)
    out = ()
    for _ in range(k):
        out = mul(out, word)
    return out


def conjugate(word, by):
    """by * word * by^-1."""
    return mul(by, word, invert_word(by))


def cyclic_reduce(word):
    """Return (core, u) with word = u * core * u^-1 and core cyclically reduced."""
    word = reduce_word(word)
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i += 1
        j -= 1
    return word[i:j], word[:i]


def canonical_cycle(word):
    """Canonical representative of the conjugacy class of ``word``.

    Cyclically reduces, then picks the lexicographically least rotation.
    """
    core, _ = cyclic_reduce(word)
    if not core:
        return ()
    best = min(core[k:] + core[:k] for k in range(len(core)))
    return best


def conjugate_words(w1, w2):
    return canonical_cycle(w1) == canonical_cycle(w2)


class Alphabet:
    """Naming scheme for the rank n+1 basis A, B_1..B_n of pi_1."""

    def __init__(self, n):
        self.n = n
        self.rank = n + 1
        self.names = ["A"] + ["B%d" % i for i in range(1, n + 1)]

    def letter_name(self, x):
        base = self.names[abs(x) - 1]
        return base if x > 0 else base + "^-1"

    def format(self, word):
        if not word:
            return "1"
        return " ".join(self.letter_name(x) for x in word)

    def a(self):
        return 1

    def b(self, i):
        if not 1 <= i <= self.n:
            raise ValueError("no such generator B%d" % i)
        return 1 + i


class FreeAutomorphism:
    """Automorphism of a free group, given by generator images.

    ``images[k-1]`` is the image of generator k; ``inverse_images`` the
    images under the inverse automorphism.  Both are validated to be
    mutually inverse on construction.
    """

    def __init__(self, rank, images, inverse_images):
        self.rank = rank
        self.images = tuple(reduce_word(w) for w in images)
        self.inverse_images = tuple(reduce_word(w) for w in inverse_images)
        if len(self.images) != rank or len(self.inverse_images) != rank:
            raise ValueError("need one image per generator")
        for k in range(1, rank + 1):
            if _apply(self.inverse_images, self.images[k - 1]) != (k,):
                raise ValueError("inverse_images do not invert images")
            if _apply(self.images, self.inverse_images[k - 1]) != (k,):
                raise ValueError("images do not invert inverse_images")

    @classmethod
    def identity(cls, rank):
        gens = tuple((k,) for k in range(1, rank + 1))
        return cls(rank, gens, gens)

    @classmethod
    def inner(cls, rank, by):
        """Conjugation g -> by * g * by^-1."""
        by = reduce_word(by)
        ib = invert_word(by)
        return cls(
            rank,
            [conjugate((k,), by) for k in range(1, rank + 1)],
            [conjugate((k,), ib) for k in range(1, rank + 1)],
        )

    def apply(self, word):
        return _apply(self.images, word)

    def apply_inverse(self, word):
        return _apply(self.inverse_images, word)

    def compose(self, other):
        """self after other: (self.compose(other))(g) = self(other(g))."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        images = [self.apply(w) for w in other.images]
        inv = [other.apply_inverse(w) for w in self.inverse_images]
        return FreeAutomorphism(self.rank, images, inv)

    def inverse(self):
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def __eq__(self, other):
        return (
            isinstance(other, FreeAutomorphism)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rank, self.images))

    def __repr__(self):
        return "FreeAutomorphism(rank=%d, images=%r)" % (self.rank, self.images)


def _apply(images, word):
    out = []
    for x in word:
        img = images[x - 1] if x > 0 else invert_word(images[-x - 1])
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def is_inner(phi):
    """If phi is conjugation by some w (g -> w g w^-1), return w, else None.

    Peels the conjugator off phi(g_1): writing phi(g_1) = u * core * u^-1
    with core cyclically reduced, innerness forces core = g_1 and the
    conjugator to be w = u * g_1^k for some integer k.  The exponent is
    bounded by the length of u^-1 phi(g_2) u, since w^-1 phi(g_2) w must
    equal g_2.
    """
    r = phi.rank
    v1 = phi.images[0]
    core, u = cyclic_reduce(v1)
    if core != (1,):
        return None
    if r == 1:
        return ()
    y = mul(invert_word(u), phi.images[1], u)
    bound = len(y) // 2 + 2
    for k in range(-bound, bound + 1):
        w = mul(u, (1,) * k if k >= 0 else (-1,) * (-k))
        if all(phi.images[j - 1] == conjugate((j,), w) for j in range(2, r + 1)):
            return w
    return None


def all_reduced_words(rank, max_len):
    """All freely reduced words of length <= max_len (brute-force oracle)."""
    letters = [x for k in range(1, rank + 1) for x in (k, -k)]
    words = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        words.extend(nxt)
        frontier = nxt
    return words


class PeripheralStructure:
    """Conjugacy classes of loops around the punctures, in order.

    ``words[i]`` is a based representative of the class around puncture
    i+1.  Comparison is up to conjugacy and inversion (a homeomorphism
    may reverse the boundary orientation of a loop it permutes, and we
    record the permutation only).
    """

    def __init__(self, words):
        self.words = tuple(reduce_word(w) for w in words)
        self.keys = tuple(canonical_cycle(w) for w in self.words)
        self.inv_keys = tuple(canonical_cycle(invert_word(w)) for w in self.words)

    def class_index(self, word):
        """Index of the peripheral class containing word (up to inversion), or None."""
        key = canonical_cycle(word)
        for i, (k, ik) in enumerate(zip(self.keys, self.inv_keys)):
            if key == k or key == ik:
                return i
        return None


def peripheral_check(phi, peripheral):
    """Permutation induced by phi on the peripheral classes, or None.

    Returns a tuple perm with phi(c_i) conjugate to c_{perm[i]} or its
    inverse; None if some image is not peripheral or the assignment is
    not a bijection.
    """
    perm = []
    for w in peripheral.words:
        j = peripheral.class_index(phi.apply(w))
        if j is None:
            return None
        perm.append(j)
    if len(set(perm)) != len(perm):
        return None
    return tuple(perm)
