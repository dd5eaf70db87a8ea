"""Proximity-map specifications and their text form.

Grammar: ``family[:key=value,...]`` with family one of sph, as, pe, cs, dd, dx
and keys r (pe, may be ``inf``), tau (cs), M (CC, IC, CM, OC or ``x;y`` in
basic coordinates) and method (lines or orthogonal, vertex-region families
only). Examples: ``pe:r=2,M=CM,method=lines``, ``cs:tau=1,M=CM``, ``as:M=CC``,
``dd:M=CM``, ``dx``, ``sph``.

Defaults filled on construction: M=CM for pe/cs/dd, M=CC for as; method is
orthogonal when M=CC (the circumcenter's lines need not meet the triangle's
interior) and lines otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from src.geometry.exceptions import InvalidSpec
from src.geometry.partitions import CenterSpec, Method, PartitionScheme

Family = Literal["sph", "as", "pe", "cs", "dd", "dx"]

FAMILIES: tuple[str, ...] = ("sph", "as", "pe", "cs", "dd", "dx")
_VERTEX_FAMILIES = ("as", "pe")
_EDGE_FAMILIES = ("cs", "dd")


@dataclass(frozen=True)
class ProximityMapSpec:
	family: Family
	r: float | None = None
	tau: float | None = None
	center: CenterSpec | None = None
	method: Method | None = None

	def __post_init__(self) -> None:
		fam = self.family
		if fam not in FAMILIES:
			raise InvalidSpec(f"unknown proximity family {fam!r}; expected one of {', '.join(FAMILIES)}")

		if fam == "pe":
			if self.r is None:
				raise InvalidSpec("pe needs r in [1, inf]")
			r = float(self.r)
			if math.isnan(r) or r < 1.0:
				raise InvalidSpec(f"pe needs r >= 1, got {self.r}")
			object.__setattr__(self, "r", r)
		elif self.r is not None:
			raise InvalidSpec(f"{fam} takes no r")

		if fam == "cs":
			if self.tau is None:
				raise InvalidSpec("cs needs tau in [0, 1]")
			tau = float(self.tau)
			if not 0.0 <= tau <= 1.0:
				raise InvalidSpec(f"cs needs 0 <= tau <= 1, got {self.tau}")
			object.__setattr__(self, "tau", tau)
		elif self.tau is not None:
			raise InvalidSpec(f"{fam} takes no tau")

		if fam in ("sph", "dx"):
			if self.center is not None or self.method is not None:
				raise InvalidSpec(f"{fam} takes no center or method")
			return

		center = self.center or CenterSpec("CC" if fam == "as" else "CM")
		object.__setattr__(self, "center", center)
		if fam in _EDGE_FAMILIES:
			if self.method not in (None, "lines"):
				raise InvalidSpec(f"{fam} uses edge regions, which only support method=lines")
			object.__setattr__(self, "method", "lines")
			return
		method = self.method or ("orthogonal" if center.kind == "CC" else "lines")
		if method not in ("lines", "orthogonal"):
			raise InvalidSpec(f"unknown method {method!r}")
		object.__setattr__(self, "method", method)

	@property
	def is_infinite(self) -> bool:
		return self.family == "pe" and self.r is not None and math.isinf(self.r)

	@property
	def uses_center(self) -> bool:
		return self.center is not None

	@property
	def scheme(self) -> PartitionScheme | None:
		if self.family in _VERTEX_FAMILIES:
			return PartitionScheme("vertex", self.method or "lines")
		if self.family in _EDGE_FAMILIES:
			return PartitionScheme("edge", "lines")
		return None

	def label(self) -> str:
		return format_spec(self)

	@classmethod
	def parse(cls, text: str) -> "ProximityMapSpec":
		return parse_spec(text)


def _format_number(v: float) -> str:
	if math.isinf(v):
		return "inf"
	if float(v).is_integer():
		return str(int(v))
	return repr(float(v))


def format_spec(spec: ProximityMapSpec) -> str:
	parts: list[str] = []
	if spec.r is not None:
		parts.append(f"r={_format_number(spec.r)}")
	if spec.tau is not None:
		parts.append(f"tau={_format_number(spec.tau)}")
	if spec.center is not None:
		parts.append(f"M={spec.center.label()}")
	if spec.method is not None and spec.family in _VERTEX_FAMILIES:
		parts.append(f"method={spec.method}")
	return spec.family if not parts else f"{spec.family}:{','.join(parts)}"


def _parse_number(key: str, raw: str) -> float:
	try:
		return float(raw)
	except ValueError as e:
		raise InvalidSpec(f"{key} must be a number, got {raw!r}") from e


def parse_spec(text: str) -> ProximityMapSpec:
	"""Parse ``family[:k=v,...]``; raises InvalidSpec on any malformed token."""
	if not isinstance(text, str) or not text.strip():
		raise InvalidSpec("empty proximity-map spec")
	head, _, tail = text.strip().partition(":")
	family = head.strip().lower()
	if family not in FAMILIES:
		raise InvalidSpec(f"unknown proximity family {head!r}; expected one of {', '.join(FAMILIES)}")

	kwargs: dict[str, object] = {}
	if tail.strip():
		for token in tail.split(","):
			key, sep, raw = token.partition("=")
			key, raw = key.strip(), raw.strip()
			if not sep or not key or not raw:
				raise InvalidSpec(f"malformed token {token!r} in {text!r}; expected key=value")
			if key in kwargs or (key == "M" and "center" in kwargs):
				raise InvalidSpec(f"duplicate key {key!r} in {text!r}")
			if key == "r":
				kwargs["r"] = _parse_number(key, raw)
			elif key == "tau":
				kwargs["tau"] = _parse_number(key, raw)
			elif key == "M":
				kwargs["center"] = CenterSpec.parse(raw)
			elif key == "method":
				kwargs["method"] = raw.lower()
			else:
				raise InvalidSpec(f"unknown key {key!r} in {text!r}; expected r, tau, M or method")
	return ProximityMapSpec(family, **kwargs)  # type: ignore[arg-type]


__all__ = [
	"Family",
	"FAMILIES",
	"ProximityMapSpec",
	"parse_spec",
	"format_spec",
]
