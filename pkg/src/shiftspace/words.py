"""
Words over Finite Alphabets

Words are plain strings over the digit alphabet 0-9a-z, so the canonical
symbol order 0 < 1 < 2 < ... is ordinary string order.
"""

from fractions import Fraction

from ..errors import InvalidInputError

ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET_SIZE = len(ALPHABET)

Word = str


def alphabet(k: int) -> str:
    """The first k symbols of the digit alphabet"""
    if not 1 <= k <= MAX_ALPHABET_SIZE:
        raise InvalidInputError(f"alphabet size must be in 1..{MAX_ALPHABET_SIZE}, got {k}")
    return ALPHABET[:k]


def symbol_value(symbol: str) -> int:
    """Integer value of a single symbol"""
    index = ALPHABET.find(symbol)
    if len(symbol) != 1 or index < 0:
        raise InvalidInputError(f"not a symbol: {symbol!r}")
    return index


def parse_word(text: str, k: int) -> Word:
    """Validate a digit string as a word over the k-symbol alphabet"""
    symbols = alphabet(k)
    text = text.strip()
    for position, symbol in enumerate(text):
        if symbol not in symbols:
            raise InvalidInputError(
                f"symbol {symbol!r} at index {position} of {text!r} is outside the {k}-symbol alphabet"
            )
    return text


def metric_distance(x: Word, y: Word) -> Fraction:
    """
    Symbol-space distance of two equal-length prefixes

    Returns 0 when the words agree, otherwise 1/(m+1) where m is the
    first index (counting from 0) at which they differ.
    """
    if len(x) != len(y):
        raise InvalidInputError(f"metric needs equal lengths, got {len(x)} and {len(y)}")
    if not x:
        raise InvalidInputError("metric needs words of length at least 1")
    m = first_difference(x, y)
    return Fraction(0) if m == len(x) else Fraction(1, m + 1)


def shift_word(w: Word) -> Word:
    """Drop the first symbol"""
    if not w:
        raise InvalidInputError("cannot shift the empty word")
    return w[1:]


def delete_twos(w: Word) -> Word:
    """Remove every symbol 2, keeping the order of the rest"""
    return w.replace("2", "")


def concat(a: Word, b: Word) -> Word:
    return a + b


def power(symbol_block: Word, n: int) -> Word:
    """c^[n]: the block repeated n times"""
    if n < 0:
        raise InvalidInputError(f"power must be non-negative, got {n}")
    return symbol_block * n


def periodic_extension(w: Word, length: int, offset: int = 0) -> Word:
    """Length-`length` window of w^[inf] starting at `offset`"""
    if not w:
        raise InvalidInputError("periodic extension of the empty word")
    start = offset % len(w)
    repeats = (start + length) // len(w) + 1
    return (w * repeats)[start:start + length]


def is_lyndon(w: Word) -> bool:
    """True when w is strictly smaller than all its proper rotations (hence primitive)"""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def first_difference(x: Word, y: Word) -> int:
    """Index of the first differing symbol, or the common length when one is a prefix"""
    for index, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return index
    return min(len(x), len(y))


def format_fraction(value: Fraction) -> str:
    """Exact rational as 'p/q' (integers render without denominator)"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
