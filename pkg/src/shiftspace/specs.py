"""
Shift Space Specifications

Declarative generators for the supported subshift families and their
textual form:

    full:k=2
    sft:k=2;forbid=11,101
    subst:0->01;1->10;seed=0
    tilde(<inner spec>)
"""

import logging
from abc import ABC, abstractmethod
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..errors import InvalidInputError, SpecParseError
from .words import ALPHABET, MAX_ALPHABET_SIZE, alphabet

logger = logging.getLogger(__name__)


class ShiftSpaceSpec(BaseModel, ABC):
    """Common interface of all subshift specifications"""

    model_config = ConfigDict(frozen=True)

    @property
    @abstractmethod
    def alphabet_size(self) -> int:
        """Number of symbols k"""

    @abstractmethod
    def to_text(self) -> str:
        """Canonical textual form (parse_spec(to_text()) == self)"""

    def __str__(self) -> str:
        return self.to_text()


def _check_symbols(word: str, k: int, what: str) -> None:
    symbols = alphabet(k)
    for symbol in word:
        if symbol not in symbols:
            raise ValueError(f"{what} {word!r} uses symbol {symbol!r} outside the {k}-symbol alphabet")


class FullShift(ShiftSpaceSpec):
    kind: Literal["full"] = "full"
    k: int = Field(ge=1, le=MAX_ALPHABET_SIZE)

    @property
    def alphabet_size(self) -> int:
        return self.k

    def to_text(self) -> str:
        return f"full:k={self.k}"


class FiniteType(ShiftSpaceSpec):
    kind: Literal["sft"] = "sft"
    k: int = Field(ge=1, le=MAX_ALPHABET_SIZE)
    forbidden: Tuple[str, ...]

    @field_validator("forbidden")
    @classmethod
    def _canonical_forbidden(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        if any(not word for word in value):
            raise ValueError("forbidden words must be nonempty")
        return tuple(sorted(set(value), key=lambda w: (len(w), w)))

    @model_validator(mode="after")
    def _forbidden_over_alphabet(self) -> "FiniteType":
        for word in self.forbidden:
            _check_symbols(word, self.k, "forbidden word")
        return self

    @property
    def alphabet_size(self) -> int:
        return self.k

    @property
    def memory(self) -> int:
        """Length of the longest forbidden word (0 when nothing is forbidden)"""
        return max((len(w) for w in self.forbidden), default=0)

    def to_text(self) -> str:
        return f"sft:k={self.k};forbid={','.join(self.forbidden)}"


class Substitution(ShiftSpaceSpec):
    kind: Literal["subst"] = "subst"
    k: int = Field(ge=1, le=MAX_ALPHABET_SIZE)
    rules: Dict[str, str]
    seed: str

    @model_validator(mode="after")
    def _well_formed(self) -> "Substitution":
        symbols = alphabet(self.k)
        for symbol, image in self.rules.items():
            _check_symbols(symbol, self.k, "rule symbol")
            if not image:
                raise ValueError(f"substitution is erasing: {symbol}->'' ")
            _check_symbols(image, self.k, "rule image")
            for target in image:
                if target not in self.rules:
                    raise ValueError(f"image {image!r} uses symbol {target!r} which has no rule")
        if len(self.seed) != 1 or self.seed not in symbols:
            raise ValueError(f"seed must be a single symbol of the alphabet, got {self.seed!r}")
        if self.seed not in self.rules:
            raise ValueError(f"seed {self.seed!r} has no rule")
        if not self.rules[self.seed].startswith(self.seed):
            raise ValueError(f"image of the seed must begin with the seed: {self.seed}->{self.rules[self.seed]}")
        return self

    @property
    def alphabet_size(self) -> int:
        return self.k

    def apply(self, word: str) -> str:
        return "".join(self.rules[symbol] for symbol in word)

    def to_text(self) -> str:
        rules = ";".join(f"{s}->{self.rules[s]}" for s in sorted(self.rules))
        inferred = _inferred_k(self.rules)
        suffix = "" if inferred == self.k else f";k={self.k}"
        return f"subst:{rules};seed={self.seed}{suffix}"


class TildeExtension(ShiftSpaceSpec):
    kind: Literal["tilde"] = "tilde"
    inner: "AnySpec"

    @model_validator(mode="after")
    def _binary_inner(self) -> "TildeExtension":
        if self.inner.alphabet_size != 2:
            raise ValueError(f"tilde extension needs a 2-symbol inner system, got k={self.inner.alphabet_size}")
        return self

    @property
    def alphabet_size(self) -> int:
        return 3

    def to_text(self) -> str:
        return f"tilde({self.inner.to_text()})"


AnySpec = Annotated[
    Union[FullShift, FiniteType, Substitution, TildeExtension],
    Field(discriminator="kind"),
]

TildeExtension.model_rebuild()


def _inferred_k(rules: Dict[str, str]) -> int:
    used = set(rules) | {s for image in rules.values() for s in image}
    return max(ALPHABET.index(s) for s in used) + 1 if used else 1


# Shipped inner systems
THUE_MORSE = Substitution(k=2, rules={"0": "01", "1": "10"}, seed="0")
CHACON = Substitution(k=2, rules={"0": "0010", "1": "1"}, seed="0")


class _SpecParser:
    """Recursive-descent parser that keeps track of the column for error messages"""

    FAMILIES = ("full", "sft", "subst")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, position: Optional[int] = None) -> SpecParseError:
        return SpecParseError(message, self.text, self.pos if position is None else position)

    def parse(self) -> ShiftSpaceSpec:
        self._skip_spaces()
        spec = self._spec()
        self._skip_spaces()
        if self.pos != len(self.text):
            raise self.fail(f"unexpected trailing text {self.text[self.pos:]!r}")
        return spec

    def _skip_spaces(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _spec(self) -> ShiftSpaceSpec:
        start = self.pos
        if self.text.startswith("tilde(", self.pos):
            self.pos += len("tilde(")
            inner = self._spec()
            if self.pos >= len(self.text) or self.text[self.pos] != ")":
                raise self.fail("expected ')' closing tilde(")
            self.pos += 1
            return self._build(start, lambda: TildeExtension(inner=inner))

        colon = self.text.find(":", self.pos)
        if colon < 0:
            raise self.fail(f"expected one of {', '.join(self.FAMILIES)} or tilde( followed by ':'")
        family = self.text[self.pos:colon].strip()
        if family not in self.FAMILIES:
            raise self.fail(f"unknown family {family!r}; expected one of {', '.join(self.FAMILIES)} or tilde(")
        self.pos = colon + 1
        body_start = self.pos
        end = self.text.find(")", self.pos)
        end = len(self.text) if end < 0 else end
        items = self._items(self.text[body_start:end], body_start)
        self.pos = end

        if family == "full":
            params = self._params(items, {"k"})
            k = self._int(params, "k", required=True)
            return self._build(start, lambda: FullShift(k=k))
        if family == "sft":
            params = self._params(items, {"k", "forbid"})
            k = self._int(params, "k", required=True)
            if "forbid" not in params:
                raise self.fail("sft needs forbid=<word>,<word>,...", start)
            value, position = params["forbid"]
            words = [w.strip() for w in value.split(",")]
            if any(not w for w in words):
                raise self.fail("empty forbidden word", position)
            return self._build(start, lambda: FiniteType(k=k, forbidden=tuple(words)))
        return self._substitution(items, start)

    def _items(self, body: str, offset: int) -> List[Tuple[str, int]]:
        items = []
        cursor = 0
        for piece in body.split(";"):
            if not piece.strip():
                raise self.fail("empty item", offset + cursor)
            items.append((piece.strip(), offset + cursor + len(piece) - len(piece.lstrip())))
            cursor += len(piece) + 1
        return items

    def _params(self, items: List[Tuple[str, int]], allowed: set) -> Dict[str, Tuple[str, int]]:
        params: Dict[str, Tuple[str, int]] = {}
        for item, position in items:
            if "=" not in item:
                raise self.fail(f"expected key=value, got {item!r}", position)
            key, value = (part.strip() for part in item.split("=", 1))
            if key not in allowed:
                raise self.fail(f"unknown key {key!r}; expected one of {', '.join(sorted(allowed))}", position)
            if key in params:
                raise self.fail(f"duplicate key {key!r}", position)
            params[key] = (value, position + item.index("=") + 1)
        return params

    def _int(self, params: Dict[str, Tuple[str, int]], key: str, required: bool = False) -> Optional[int]:
        if key not in params:
            if required:
                raise self.fail(f"missing {key}=")
            return None
        value, position = params[key]
        if not value.isdigit():
            raise self.fail(f"{key} must be a positive integer, got {value!r}", position)
        return int(value)

    def _substitution(self, items: List[Tuple[str, int]], start: int) -> ShiftSpaceSpec:
        rules: Dict[str, str] = {}
        params: Dict[str, Tuple[str, int]] = {}
        for item, position in items:
            if "->" in item:
                symbol, image = (part.strip() for part in item.split("->", 1))
                if len(symbol) != 1 or symbol not in ALPHABET:
                    raise self.fail(f"rule must map a single symbol, got {symbol!r}", position)
                if symbol in rules:
                    raise self.fail(f"duplicate rule for {symbol!r}", position)
                bad = next((s for s in image if s not in ALPHABET), None)
                if bad is not None:
                    raise self.fail(f"rule image {image!r} contains {bad!r}", position + item.index("->") + 2)
                rules[symbol] = image
            else:
                params.update(self._params([(item, position)], {"seed", "k"}))
        if not rules:
            raise self.fail("substitution needs at least one rule a->w", start)
        if "seed" not in params:
            raise self.fail("substitution needs seed=<symbol>", start)
        seed = params["seed"][0]
        k = self._int(params, "k") or _inferred_k(rules)
        return self._build(start, lambda: Substitution(k=k, rules=rules, seed=seed))

    def _build(self, start: int, factory):
        try:
            return factory()
        except ValidationError as exc:
            message = "; ".join(error["msg"] for error in exc.errors())
            raise self.fail(message, start) from None
        except InvalidInputError as exc:
            raise self.fail(str(exc), start) from None


def parse_spec(text: str) -> ShiftSpaceSpec:
    """Parse the textual spec form; raises SpecParseError with a column on failure"""
    spec = _SpecParser(text).parse()
    logger.debug(f"Parsed spec {text!r} as {spec.to_text()}")
    return spec
