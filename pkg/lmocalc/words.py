#!/usr/bin/python3
#
# Non-associative words in the single letter '.', e.g. ((..).)

from lmocalc.errors import NotationError
from lmocalc.notation import Scanner

LEAF = '.'


class Word(object):
    """A binary tree whose leaves are '.'; None is the empty word."""

    __slots__ = ('tree',)

    def __init__(self, tree=None):
        self.tree = tree

    def __len__(self):
        return _leaves(self.tree)

    def tensor(self, other):
        if self.tree is None:
            return other
        if other.tree is None:
            return self
        return Word((self.tree, other.tree))

    def is_letter(self):
        return self.tree == LEAF

    def __eq__(self, other):
        return isinstance(other, Word) and self.tree == other.tree

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.tree)

    def __str__(self):
        return _show(self.tree)

    def describe(self):
        return str(self) or '∅'

    def __repr__(self):
        return 'Word({0})'.format(self.describe())


def _leaves(tree):
    if tree is None:
        return 0
    if tree == LEAF:
        return 1
    return _leaves(tree[0]) + _leaves(tree[1])


def _show(tree):
    if tree is None:
        return ''
    if tree == LEAF:
        return LEAF
    return '(' + _show(tree[0]) + _show(tree[1]) + ')'


def letter():
    return Word(LEAF)


def empty():
    return Word()


def left_comb(n):
    """The word (((..).).) with n letters."""
    w = Word()
    for _ in range(n):
        w = w.tensor(letter())
    return w


def read_word(sc):
    """Read a possibly empty word from a scanner."""
    if sc.accept(LEAF):
        return Word(LEAF)
    if sc.accept('('):
        start = sc.pos - 1
        left = read_word(sc)
        right = read_word(sc)
        if left.tree is None or right.tree is None:
            sc.error('a bracket must hold two nonempty words', start)
        sc.expect(')')
        return Word((left.tree, right.tree))
    return Word()


def parse_word(text):
    sc = Scanner(text, NotationError)
    w = read_word(sc)
    sc.finish()
    return w


def all_words(n):
    """Every bracketing of n letters."""
    if n == 0:
        return [Word()]
    if n == 1:
        return [letter()]
    out = []
    for k in range(1, n):
        for a in all_words(k):
            for b in all_words(n - k):
                out.append(Word((a.tree, b.tree)))
    return out
