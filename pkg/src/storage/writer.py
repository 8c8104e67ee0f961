"""
Certificate Writer

Context-managed sink for certificate envelopes: stdout or a file, JSON or
a plain-text rendering of the same data. The metadata block (tool version,
UTC timestamp) is the only nondeterministic part and is left out of
reproducible runs.
"""

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Any, Dict, List, Optional

from .. import __version__
from .models import Certificate

logger = logging.getLogger(__name__)

TOOL_NAME = "symdyn"


def metadata() -> Dict[str, str]:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def _text_lines(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    lines: List[str] = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            lines.append(pad + " ".join(_scalar(item) for item in value))
        else:
            for item in value:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, dict)):
        return "(none)"
    return str(value)


def render_text(payload: Dict[str, Any]) -> str:
    """Human-readable rendering of an envelope; never a parse target"""
    header = f"{payload['kind']}: {payload['verdict']}"
    body = {key: value for key, value in payload.items() if key not in ("kind", "verdict")}
    return "\n".join([header, "=" * len(header)] + _text_lines(body, 0)) + "\n"


def render(payload: Dict[str, Any], fmt: str) -> str:
    if fmt == "text":
        return render_text(payload)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


class CertificateWriter:
    """Writes certificate envelopes to stdout or a file"""

    def __init__(
        self,
        out: Optional[str] = None,
        fmt: str = "json",
        reproducible: bool = False,
        stream: Optional[IO[str]] = None,
    ):
        self.out = out
        self.fmt = fmt
        self.reproducible = reproducible
        self._stream = stream
        self._handle: Optional[IO[str]] = None

    def __enter__(self) -> "CertificateWriter":
        if self.out is not None:
            self._handle = Path(self.out).open("w", encoding="utf-8")
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    @property
    def stream(self) -> IO[str]:
        if self._handle is not None:
            return self._handle
        return self._stream if self._stream is not None else sys.stdout

    def payload(self, certificate: Certificate) -> Dict[str, Any]:
        envelope = certificate.envelope()
        if not self.reproducible:
            envelope["metadata"] = metadata()
        return envelope

    def write(self, certificate: Certificate) -> None:
        self.stream.write(render(self.payload(certificate), self.fmt))
        self.stream.flush()
        logger.debug(f"Wrote {certificate.kind} certificate to {self.out or 'stdout'}")
