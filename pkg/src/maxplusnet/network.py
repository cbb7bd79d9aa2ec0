"""Fork-join network descriptions, validation, and builders.

Node ids are 1-based everywhere a user can see them.  A node with no
predecessors models an infinite external arrival stream and must carry
``initial_buffer = INF``; every other node starts with a finite number
of already-joined customers waiting in its buffer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

from . import rng
from .errors import ServiceTableError, SpecValidationError

INF = math.inf


# ---------------------------------------------------------------------------
# service-time sources


class ServiceTimeSource:
    """Base class; subclasses are pure in (seed, k) and immutable."""

    def sample(self, k: int):
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(ServiceTimeSource):
    value: float

    def sample(self, k):
        return self.value

    def to_dict(self):
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class ExplicitSequence(ServiceTimeSource):
    """Fixed list of service times; past the end either wrap or fail.

    The default policy is "error": silent wrapping can mask a
    misconfigured horizon.
    """

    values: tuple
    policy: str = "error"  # "wrap" | "error"

    def sample(self, k):
        n = len(self.values)
        if k <= n:
            return self.values[k - 1]
        if self.policy == "wrap":
            return self.values[(k - 1) % n]
        raise ServiceTableError(
            f"explicit sequence of length {n} exhausted at index {k}")

    def to_dict(self):
        return {"kind": "sequence", "values": list(self.values),
                "policy": self.policy}


@dataclass(frozen=True)
class Uniform(ServiceTimeSource):
    lo: float
    hi: float
    seed: int

    def sample(self, k):
        return rng.stream_uniform(self.seed, k, self.lo, self.hi)

    def to_dict(self):
        return {"kind": "uniform", "lo": self.lo, "hi": self.hi,
                "seed": self.seed}


@dataclass(frozen=True)
class Exponential(ServiceTimeSource):
    rate: float
    seed: int

    def sample(self, k):
        return rng.stream_exponential(self.seed, k, self.rate)

    def to_dict(self):
        return {"kind": "exponential", "rate": self.rate, "seed": self.seed}


@dataclass(frozen=True)
class Remapped(ServiceTimeSource):
    """Reads position stride*(k-1) + offset of a base stream.

    This is the round-routing index remapping: ring node l+j of the
    equivalent network consumes source positions j, l+j, 2l+j, ...
    """

    base: ServiceTimeSource
    stride: int
    offset: int

    def sample(self, k):
        return self.base.sample(self.stride * (k - 1) + self.offset)

    def to_dict(self):
        return {"kind": "remapped", "base": self.base.to_dict(),
                "stride": self.stride, "offset": self.offset}


_SOURCE_KINDS = {"constant", "sequence", "uniform", "exponential", "remapped"}


def source_from_dict(d: dict) -> ServiceTimeSource:
    kind = d.get("kind")
    if kind not in _SOURCE_KINDS:
        raise SpecValidationError([f"unknown service kind {kind!r}"])
    expected = {
        "constant": {"kind", "value"},
        "sequence": {"kind", "values", "policy"},
        "uniform": {"kind", "lo", "hi", "seed"},
        "exponential": {"kind", "rate", "seed"},
        "remapped": {"kind", "base", "stride", "offset"},
    }[kind]
    unknown = set(d) - expected
    if unknown:
        raise SpecValidationError(
            [f"unknown keys {sorted(unknown)} in service entry"])
    if kind == "constant":
        return Constant(d["value"])
    if kind == "sequence":
        return ExplicitSequence(tuple(d["values"]), d.get("policy", "error"))
    if kind == "uniform":
        return Uniform(d["lo"], d["hi"], d["seed"])
    if kind == "exponential":
        return Exponential(d["rate"], d["seed"])
    return Remapped(source_from_dict(d["base"]), d["stride"], d["offset"])


def _source_violations(src, node: int) -> list:
    """Static positivity checks on a source's parameters."""
    out = []
    if isinstance(src, Constant) and not src.value > 0:
        out.append(f"node {node}: constant service time must be positive")
    elif isinstance(src, ExplicitSequence):
        if not src.values:
            out.append(f"node {node}: empty service sequence")
        elif any(not v > 0 for v in src.values):
            out.append(f"node {node}: service sequence has a nonpositive "
                       "entry")
        if src.policy not in ("wrap", "error"):
            out.append(f"node {node}: unknown sequence policy "
                       f"{src.policy!r}")
    elif isinstance(src, Uniform):
        if src.lo < 0 or not src.hi > src.lo:
            out.append(f"node {node}: uniform range must satisfy "
                       "0 <= lo < hi")
    elif isinstance(src, Exponential):
        if not src.rate > 0:
            out.append(f"node {node}: exponential rate must be positive")
    elif isinstance(src, Remapped):
        out.extend(_source_violations(src.base, node))
    return out


# ---------------------------------------------------------------------------
# network spec


@dataclass(frozen=True)
class NetworkSpec:
    """Validated fork-join network: graph, initial buffers, services."""

    name: str
    n: int
    arcs: frozenset  # of (i, j), 1-based, i -> j
    initial_buffer: tuple  # per node, int or INF
    service: tuple  # per node, ServiceTimeSource

    @cached_property
    def _pred_map(self):
        m = {i: [] for i in range(1, self.n + 1)}
        for i, j in sorted(self.arcs):
            m[j].append(i)
        return m

    @cached_property
    def _succ_map(self):
        m = {i: [] for i in range(1, self.n + 1)}
        for i, j in sorted(self.arcs):
            m[i].append(j)
        return m

    def preds(self, i: int) -> tuple:
        """P(i): nodes with an arc into i."""
        return tuple(self._pred_map[i])

    def succs(self, i: int) -> tuple:
        """S(i): nodes i feeds."""
        return tuple(self._succ_map[i])

    def r(self, i: int):
        return self.initial_buffer[i - 1]

    def is_source(self, i: int) -> bool:
        return self.initial_buffer[i - 1] == INF


def violations(spec: NetworkSpec) -> list:
    """All structural breaches, one string each; empty when valid."""
    out = []
    if spec.n < 1:
        return ["empty node set"]
    if len(spec.initial_buffer) != spec.n:
        out.append(f"initial_buffer has {len(spec.initial_buffer)} entries "
                   f"for {spec.n} nodes")
        return out
    if len(spec.service) != spec.n:
        out.append(f"service has {len(spec.service)} entries for "
                   f"{spec.n} nodes")
        return out
    for i, j in sorted(spec.arcs):
        if not (1 <= i <= spec.n and 1 <= j <= spec.n):
            out.append(f"arc ({i},{j}) references an unknown node")
        elif i == j:
            out.append(f"self-loop at {i}")
    if out:
        return out
    for i in range(1, spec.n + 1):
        r = spec.r(i)
        has_preds = bool(spec.preds(i))
        if r == INF and has_preds:
            out.append(f"node {i}: initial buffer inf but node has "
                       "predecessors")
        elif r != INF and not has_preds:
            out.append(f"node {i}: finite initial buffer at a source node")
        elif r != INF and (not isinstance(r, int) or r < 0):
            out.append(f"node {i}: initial buffer must be a nonnegative "
                       "integer or inf")
        out.extend(_source_violations(spec.service[i - 1], i))
    return out


def validate(spec: NetworkSpec) -> NetworkSpec:
    """Return the spec unchanged, or raise with the full violation list.

    Idempotent: a spec that validates once validates forever (specs are
    immutable).
    """
    errs = violations(spec)
    if errs:
        raise SpecValidationError(errs)
    return spec


# ---------------------------------------------------------------------------
# builders for the supported network families


def _services(service, n, default=None):
    if service is None:
        service = default if default is not None else Constant(1)
    if isinstance(service, ServiceTimeSource):
        return (service,) * n
    service = tuple(service)
    if len(service) != n:
        raise SpecValidationError(
            [f"expected {n} service sources, got {len(service)}"])
    return service


def build_open_tandem(n: int, service=None) -> NetworkSpec:
    """Chain 1 -> 2 -> ... -> n; node 1 is the external source."""
    if n < 2:
        raise SpecValidationError(["open tandem needs at least 2 nodes"])
    arcs = frozenset((i, i + 1) for i in range(1, n))
    buffers = (INF,) + (0,) * (n - 1)
    return validate(NetworkSpec(name=f"open-tandem:{n}", n=n, arcs=arcs,
                                initial_buffer=buffers,
                                service=_services(service, n)))


def build_closed_tandem(n: int, r, service=None) -> NetworkSpec:
    """Ring 1 -> 2 -> ... -> n -> 1 with finite buffers r."""
    if n < 2:
        raise SpecValidationError(["closed tandem needs at least 2 nodes"])
    r = tuple(r)
    if len(r) != n:
        raise SpecValidationError([f"expected {n} buffer counts, got "
                                   f"{len(r)}"])
    if any(x == INF for x in r):
        raise SpecValidationError(["closed tandem buffers must be finite"])
    if sum(r) < 1:
        raise SpecValidationError(["closed tandem needs at least one "
                                   "customer"])
    arcs = frozenset((i, i + 1) for i in range(1, n)) | {(n, 1)}
    return validate(NetworkSpec(name=f"closed-tandem:{n}", n=n, arcs=arcs,
                                initial_buffer=r,
                                service=_services(service, n)))


def build_fork_join(name: str, n: int, arcs, initial_buffer,
                    service) -> NetworkSpec:
    """General fork-join network from explicit parts."""
    return validate(NetworkSpec(name=name, n=n, arcs=frozenset(arcs),
                                initial_buffer=tuple(initial_buffer),
                                service=_services(service, n)))


def build_reference_fork_join(service=None) -> NetworkSpec:
    """The 5-node reference network used throughout the test suite.

    Node 1 is an external source feeding 2; node 2 forks to 3 and 4;
    3 feeds both 5 and (back) 2; 3 and 5 hold one initial customer each.
    """
    arcs = [(1, 2), (2, 3), (2, 4), (3, 2), (3, 5), (4, 5)]
    buffers = (INF, 0, 1, 0, 1)
    return build_fork_join("paper-example-1", 5, arcs, buffers,
                           _services(service, 5))


def build_round_robin(l: int, source_service=None,
                      branch_service=None) -> NetworkSpec:
    """Equivalent fork-join form of a round-routing dispatcher.

    The single dispatching queue is replaced by a ring of l nodes
    (ids l+1 .. 2l, one initial customer at l+1); ring node l+j feeds
    branch j, and its k-th service time is position l*(k-1)+j of the
    original source stream.
    """
    if l < 2:
        raise SpecValidationError(["round robin needs at least 2 branches"])
    if source_service is None:
        source_service = Constant(1)
    branches = _services(branch_service, l)
    arcs = set()
    for j in range(1, l + 1):
        arcs.add((l + j, j))
    for j in range(1, l):
        arcs.add((l + j, l + j + 1))
    arcs.add((2 * l, l + 1))
    buffers = (0,) * l + (1,) + (0,) * (l - 1)
    ring = tuple(Remapped(source_service, stride=l, offset=j)
                 for j in range(1, l + 1))
    return validate(NetworkSpec(name=f"round-robin:{l}", n=2 * l,
                                arcs=frozenset(arcs),
                                initial_buffer=buffers,
                                service=branches + ring))


# ---------------------------------------------------------------------------
# realized service times


@dataclass(frozen=True)
class ServiceTimeTable:
    """Materialized service times, n nodes by K customers."""

    values: tuple  # values[i-1][k-1]

    @property
    def n(self):
        return len(self.values)

    @property
    def horizon(self):
        return len(self.values[0]) if self.values else 0

    def tau(self, i: int, k: int):
        return self.values[i - 1][k - 1]

    def row(self, k: int) -> tuple:
        """Service times of the k-th customers, node order."""
        return tuple(col[k - 1] for col in self.values)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for col in self.values for v in col)

    def as_float(self) -> "ServiceTimeTable":
        return ServiceTimeTable(tuple(tuple(float(v) for v in col)
                                      for col in self.values))


def realize_service(spec: NetworkSpec, K: int) -> ServiceTimeTable:
    """Evaluate every source at indices 1..K; deterministic per seed."""
    if K < 1:
        raise ServiceTableError("horizon must be >= 1")
    cols = []
    for i in range(1, spec.n + 1):
        src = spec.service[i - 1]
        col = tuple(src.sample(k) for k in range(1, K + 1))
        for k, v in enumerate(col, start=1):
            if not v > 0:
                raise ServiceTableError(
                    f"node {i}: nonpositive service time {v!r} at k={k}")
        cols.append(col)
    return ServiceTimeTable(tuple(cols))


# ---------------------------------------------------------------------------
# JSON spec files

_TOP_KEYS = {"name", "nodes", "arcs", "service"}
_NODE_KEYS = {"id", "initial_buffer"}


def spec_to_dict(spec: NetworkSpec) -> dict:
    return {
        "name": spec.name,
        "nodes": [{"id": i,
                   "initial_buffer": ("inf" if spec.r(i) == INF
                                      else spec.r(i))}
                  for i in range(1, spec.n + 1)],
        "arcs": [list(a) for a in sorted(spec.arcs)],
        "service": {str(i): spec.service[i - 1].to_dict()
                    for i in range(1, spec.n + 1)},
    }


def spec_from_dict(doc: dict) -> NetworkSpec:
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise SpecValidationError(
            [f"unknown top-level keys {sorted(unknown)}"])
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise SpecValidationError(
            [f"missing top-level keys {sorted(missing)}"])
    nodes = doc["nodes"]
    ids = []
    buffers = {}
    for entry in nodes:
        unknown = set(entry) - _NODE_KEYS
        if unknown:
            raise SpecValidationError(
                [f"unknown node keys {sorted(unknown)}"])
        i = entry["id"]
        b = entry["initial_buffer"]
        buffers[i] = INF if b == "inf" else b
        ids.append(i)
    n = len(ids)
    if sorted(ids) != list(range(1, n + 1)):
        raise SpecValidationError(["node ids must be exactly 1..n"])
    service = {}
    for key, sdoc in doc["service"].items():
        service[int(key)] = source_from_dict(sdoc)
    if sorted(service) != list(range(1, n + 1)):
        raise SpecValidationError(["service table must cover exactly "
                                   "nodes 1..n"])
    arcs = frozenset(tuple(a) for a in doc["arcs"])
    return validate(NetworkSpec(
        name=doc["name"], n=n, arcs=arcs,
        initial_buffer=tuple(buffers[i] for i in range(1, n + 1)),
        service=tuple(service[i] for i in range(1, n + 1))))


def save_spec(spec: NetworkSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2)
        fh.write("\n")


def load_spec(path) -> NetworkSpec:
    with open(path, encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))
