"""Corpus generation and sweep orchestration for the bound checkers.

A sweep applies a list of registry checkers to every graph of a corpus
(exhaustive labeled connected graphs at small n, or a graph6 file), with
subset-level checkers fanned out over a :class:`SubsetPolicy`.  The result
is a :class:`SweepReport`: verdict totals per checker, equality witnesses,
the minimal positive slack with its witness, and the violation list that
must stay empty for safe-mode checkers.

Reports are deterministic down to the byte: work is split into chunks
whose boundaries depend only on the corpus, partial aggregates are merged
in chunk order, and every serialized float passes through the shared
12-significant-digit canonicalization.  Running with one worker or many
yields identical JSON.
"""

import json
import multiprocessing
import random
from dataclasses import dataclass

from .bounds import (
    HOLDS,
    HOLDS_WITH_EQUALITY,
    NOT_APPLICABLE,
    REGISTRY,
    VERDICTS,
    VIOLATED,
    _canon,
    resolve_checkers,
)
from .graphs import (
    Graph,
    is_connected,
    parse_graph6,
    read_graph6_lines,
    to_graph6,
    upper_triangle_pairs,
)
from .linalg import GUARD_BAND
from .spectra import MatrixKind, PreconditionError, spectrum_of

DEDUP_MODES = ("none", "by-sorted-Q-spectrum")
SUBSET_MODES = (
    "all-subsets",
    "all-singletons",
    "top-degree-pair",
    "independent-sets",
    "random",
)

# exhaustive-subset policies refuse huge graphs outside enumeration mode
SUBSET_BLOWUP_LIMIT = 12

# report caps, applied after the deterministic merge
MAX_VIOLATIONS = 20000
MAX_WITNESSES = 1000
MAX_ERRORS = 1000

# chunk sizes are constants so the work split never depends on the
# worker count
_MASK_CHUNK = 1 << 13
_GRAPH_CHUNK = 2048


@dataclass(frozen=True)
class CorpusSpec:
    """Where the graphs come from and which filters apply.

    ``source`` is either ``enumerate`` (all labeled graphs on n_min..n_max
    vertices, in graph6 bit order) or ``file`` (a graph6 file).  The
    spectral dedup keeps the first graph per rounded sorted Q-spectrum;
    collisions are counted in the sweep's corpus summary (a collision is
    usually a relabeling, occasionally a genuine Q-cospectral mate -
    telling those apart needs isomorphism testing, which this toolkit
    does not do).
    """

    source: str
    n_min: int = 0
    n_max: int = 0
    path: str = ""
    connected_only: bool = True
    dedup: str = "none"

    def __post_init__(self):
        if self.source not in ("enumerate", "file"):
            raise PreconditionError("source must be 'enumerate' or 'file'")
        if self.dedup not in DEDUP_MODES:
            raise PreconditionError("dedup must be one of %s" % (DEDUP_MODES,))
        if self.source == "enumerate":
            if not 1 <= self.n_min <= self.n_max <= 9:
                raise PreconditionError(
                    "enumeration needs 1 <= n_min <= n_max <= 9"
                )
        elif not self.path:
            raise PreconditionError("file source needs a path")

    @classmethod
    def from_string(cls, text, connected_only=True, dedup="none"):
        """Parse ``enumerate:3..7``, ``enumerate:5``, or ``file:path``."""
        kind, sep, rest = text.partition(":")
        if not sep:
            raise PreconditionError("corpus spec needs the form kind:args")
        if kind == "enumerate":
            lo, sep, hi = rest.partition("..")
            try:
                n_min = int(lo)
                n_max = int(hi) if sep else n_min
            except ValueError:
                raise PreconditionError("bad enumeration range %r" % (rest,))
            return cls(
                "enumerate",
                n_min=n_min,
                n_max=n_max,
                connected_only=connected_only,
                dedup=dedup,
            )
        if kind == "file":
            return cls("file", path=rest, connected_only=connected_only, dedup=dedup)
        raise PreconditionError("unknown corpus kind %r" % (kind,))

    @property
    def label(self):
        if self.source == "enumerate":
            if self.n_min == self.n_max:
                return "enumerate:%d" % self.n_min
            return "enumerate:%d..%d" % (self.n_min, self.n_max)
        return "file:%s" % self.path


def _spectral_key(g):
    spec = spectrum_of(g, MatrixKind.SignlessLaplacian)
    return (g.n,) + tuple(int(round(v * 1e6)) for v in spec.values)


def _graph_from_mask(n, pairs, mask):
    return Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def enumerate_graphs(spec, stats=None):
    """Yield the corpus graphs in deterministic order.

    Enumeration walks every labeled graph (edge masks in graph6 bit
    order) and checks per n that the raw count matches 2^C(n,2); file
    sources surface parse errors with their line numbers.  When a dict
    is passed as ``stats`` it receives ``raw`` (graphs before any
    filter), ``filtered`` (dropped as disconnected), and
    ``dedup_dropped`` (spectral-key collisions).
    """
    if stats is None:
        stats = {}
    stats.update(raw=0, filtered=0, dedup_dropped=0)
    seen = set() if spec.dedup != "none" else None

    def sieve(source):
        for g in source:
            stats["raw"] += 1
            if spec.connected_only and not is_connected(g):
                stats["filtered"] += 1
                continue
            if seen is not None:
                key = _spectral_key(g)
                if key in seen:
                    stats["dedup_dropped"] += 1
                    continue
                seen.add(key)
            yield g

    if spec.source == "enumerate":
        for n in range(spec.n_min, spec.n_max + 1):
            pairs = upper_triangle_pairs(n)
            before = stats["raw"]
            yield from sieve(
                _graph_from_mask(n, pairs, mask)
                for mask in range(1 << len(pairs))
            )
            if stats["raw"] - before != 2 ** (n * (n - 1) // 2):
                raise AssertionError("enumeration miscount at n=%d" % n)
    else:
        with open(spec.path) as handle:
            yield from sieve(read_graph6_lines(handle))


@dataclass(frozen=True)
class SubsetPolicy:
    """How subset-level checkers fan out over vertex subsets U.

    ``random`` mode is deterministic per graph: the generator is seeded
    with "seed:graph6", so a sweep's instance list does not depend on
    visit order or worker count.
    """

    mode: str
    k: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.mode not in SUBSET_MODES:
            raise PreconditionError("subset mode must be one of %s" % (SUBSET_MODES,))
        if self.mode == "random" and self.k < 1:
            raise PreconditionError("random mode needs k >= 1 draws")

    @classmethod
    def from_string(cls, text):
        """Parse ``all-subsets``, ..., or ``random:k,seed``."""
        if text.startswith("random:"):
            body = text[len("random:"):]
            parts = body.split(",")
            try:
                k = int(parts[0])
                seed = int(parts[1]) if len(parts) > 1 else 0
            except (ValueError, IndexError):
                raise PreconditionError("random policy needs random:k[,seed]")
            return cls("random", k=k, seed=seed)
        return cls(text)

    @property
    def label(self):
        if self.mode == "random":
            return "random:%d,%d" % (self.k, self.seed)
        return self.mode

    def subsets(self, g, enumerated=True):
        """Proper nonempty vertex subsets of g under this policy."""
        n = g.n
        if self.mode == "all-singletons":
            for v in range(n):
                yield (v,)
            return
        if self.mode == "top-degree-pair":
            if n >= 2:
                degs = g.degrees
                order = sorted(range(n), key=lambda v: (-degs[v], v))
                yield tuple(sorted(order[:2]))
            return
        if self.mode == "random":
            if n < 2:
                return
            rng = random.Random("%d:%s" % (self.seed, to_graph6(g)))
            seen = set()
            for _ in range(self.k):
                mask = rng.randrange(1, (1 << n) - 1)
                if mask in seen:
                    continue
                seen.add(mask)
                yield tuple(v for v in range(n) if mask >> v & 1)
            return
        # the two exhaustive modes
        if not enumerated and n > SUBSET_BLOWUP_LIMIT:
            raise PreconditionError(
                "%s would enumerate 2^%d subsets; use random:k,seed" % (self.mode, n)
            )
        masks = g.adjacency_masks
        for mask in range(1, (1 << n) - 1):
            subset = tuple(v for v in range(n) if mask >> v & 1)
            if self.mode == "independent-sets":
                if len(subset) < 2:
                    continue
                if any(masks[v] & mask for v in subset):
                    continue
            yield subset


# ----------------------------------------------------------------------
# sweep workers
# ----------------------------------------------------------------------

def _new_bucket():
    return {
        "counts": {v: 0 for v in VERDICTS},
        "errors": 0,
        "equality": [],
        "equality_dropped": 0,
        "violations": [],
        "violations_dropped": 0,
        "min": None,
    }


def _tally(bucket, cert):
    bucket["counts"][cert.verdict] += 1
    if cert.verdict == HOLDS_WITH_EQUALITY:
        if len(bucket["equality"]) < MAX_WITNESSES:
            bucket["equality"].append(cert.input)
        else:
            bucket["equality_dropped"] += 1
    elif cert.verdict == VIOLATED:
        if len(bucket["violations"]) < MAX_VIOLATIONS:
            bucket["violations"].append(
                {
                    "bound_id": cert.bound_id,
                    "input": cert.input,
                    "lhs": cert.lhs,
                    "rhs": cert.rhs,
                    "slack": cert.slack,
                }
            )
        else:
            bucket["violations_dropped"] += 1
    elif cert.verdict == HOLDS and cert.slack > GUARD_BAND:
        candidate = (cert.slack, cert.input, cert.bound_id)
        if bucket["min"] is None or candidate < bucket["min"]:
            bucket["min"] = candidate


def _run_instance(spec, bucket, errors, rows, g, subset=None):
    try:
        if subset is None:
            certs = spec.run(g)
        else:
            certs = spec.run(g, subset)
    except PreconditionError:
        # the instance falls outside the claim's stated regime
        bucket["counts"][NOT_APPLICABLE] += 1
        return
    except Exception as exc:  # quarantine, never abort the sweep
        bucket["errors"] += 1
        if len(errors) < MAX_ERRORS:
            desc = to_graph6(g)
            if subset is not None:
                desc = "%s|U=%s" % (desc, ",".join(str(v) for v in subset))
            errors.append(
                {
                    "bound": spec.key,
                    "input": desc,
                    "error": "%s: %s" % (type(exc).__name__, exc),
                }
            )
        return
    for cert in certs:
        _tally(bucket, cert)
        if rows is not None:
            rows.append(cert.csv_row())


def _sweep_graphs(graphs, keys, policy, enumerated, emit):
    specs = [REGISTRY[key] for key in keys]
    graph_specs = [s for s in specs if not s.needs_subset]
    subset_specs = [s for s in specs if s.needs_subset]
    per_bound = {key: _new_bucket() for key in keys}
    errors = []
    rows = [] if emit else None
    emitted = 0
    for g in graphs:
        emitted += 1
        for spec in graph_specs:
            _run_instance(spec, per_bound[spec.key], errors, rows, g)
        if subset_specs:
            try:
                subset_list = list(policy.subsets(g, enumerated=enumerated))
            except PreconditionError as exc:
                if len(errors) < MAX_ERRORS:
                    errors.append(
                        {
                            "bound": "subset-policy",
                            "input": to_graph6(g),
                            "error": "%s: %s" % (type(exc).__name__, exc),
                        }
                    )
                continue
            for subset in subset_list:
                for spec in subset_specs:
                    _run_instance(spec, per_bound[spec.key], errors, rows, g, subset)
    return per_bound, errors, rows, emitted


def _sweep_chunk(task):
    kind, payload, keys, policy_text, connected_only, emit = task
    policy = SubsetPolicy.from_string(policy_text)
    if kind == "enumerate":
        n, lo, hi = payload
        pairs = upper_triangle_pairs(n)

        def graphs():
            for mask in range(lo, hi):
                g = _graph_from_mask(n, pairs, mask)
                if connected_only and not is_connected(g):
                    continue
                yield g

        per_bound, errors, rows, emitted = _sweep_graphs(
            graphs(), keys, policy, True, emit
        )
        raw = hi - lo
    else:
        graphs = [parse_graph6(text) for text in payload]
        per_bound, errors, rows, emitted = _sweep_graphs(
            graphs, keys, policy, kind == "graphs-enumerated", emit
        )
        raw = len(graphs)
    return {
        "raw": raw,
        "emitted": emitted,
        "per_bound": per_bound,
        "errors": errors,
        "rows": rows,
    }


def _make_tasks(corpus, keys, policy_text, emit):
    """Split the corpus into worker tasks; boundaries depend only on the
    corpus, so any worker count produces the same chunk list."""
    tasks = []
    stats = None
    if corpus.source == "enumerate" and corpus.dedup == "none":
        for n in range(corpus.n_min, corpus.n_max + 1):
            total = 1 << (n * (n - 1) // 2)
            for lo in range(0, total, _MASK_CHUNK):
                hi = min(lo + _MASK_CHUNK, total)
                tasks.append(
                    ("enumerate", (n, lo, hi), keys, policy_text,
                     corpus.connected_only, emit)
                )
    else:
        # dedup needs global first-seen order; file corpora are cheap to
        # materialize - either way the chunks carry graph6 strings
        stats = {}
        materialized = [to_graph6(g) for g in enumerate_graphs(corpus, stats)]
        kind = "graphs-enumerated" if corpus.source == "enumerate" else "graphs"
        for lo in range(0, len(materialized), _GRAPH_CHUNK):
            chunk = tuple(materialized[lo:lo + _GRAPH_CHUNK])
            tasks.append(
                (kind, chunk, keys, policy_text, corpus.connected_only, emit)
            )
        if not tasks:
            tasks.append(
                (kind, (), keys, policy_text, corpus.connected_only, emit)
            )
        stats["graphs"] = len(materialized)
    return tasks, stats


@dataclass
class SweepReport:
    """Aggregated sweep outcome; serializes to stable, diffable JSON."""

    corpus: dict
    subsets: str
    bounds: list
    totals: dict
    equality_witnesses: dict
    min_positive_slack: dict
    violations: dict
    errors: list
    truncation: dict
    schema: int = 1

    def to_json_dict(self):
        return _canon(
            {
                "schema": self.schema,
                "corpus": self.corpus,
                "subsets": self.subsets,
                "bounds": self.bounds,
                "totals": self.totals,
                "equality_witnesses": self.equality_witnesses,
                "min_positive_slack": self.min_positive_slack,
                "violations": self.violations,
                "errors": self.errors,
                "truncation": self.truncation,
            }
        )

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def safe_violation_count(self):
        """Violations among checkers whose failures would be bugs."""
        total = 0
        for key, records in self.violations.items():
            spec = REGISTRY.get(key)
            if spec is not None and spec.safe:
                total += len(records) + self.truncation["violations"].get(key, 0)
        return total


def run_sweep(corpus, bounds, subsets=None, workers=1, emit_certificates=None):
    """Apply checkers to every graph (x subset) of a corpus.

    ``bounds`` is a list of registry keys or bare checker names (bare
    names expand to their safe variants).  ``subsets`` is a
    :class:`SubsetPolicy`, a policy string, or None for all-singletons.
    ``emit_certificates`` optionally names a CSV path that receives every
    individual certificate row (meant for small corpora).
    """
    if isinstance(corpus, str):
        corpus = CorpusSpec.from_string(corpus)
    if subsets is None:
        policy = SubsetPolicy("all-singletons")
    elif isinstance(subsets, SubsetPolicy):
        policy = subsets
    else:
        policy = SubsetPolicy.from_string(subsets)

    keys = []
    for name in bounds:
        for spec in resolve_checkers(name):
            if spec.key not in keys:
                keys.append(spec.key)
    keys = tuple(keys)

    emit = emit_certificates is not None
    tasks, pre_stats = _make_tasks(corpus, keys, policy.label, emit)

    if workers <= 1 or len(tasks) == 1:
        partials = [_sweep_chunk(task) for task in tasks]
    else:
        with multiprocessing.Pool(processes=workers) as pool:
            partials = pool.map(_sweep_chunk, tasks, chunksize=1)

    merged = {key: _new_bucket() for key in keys}
    errors = []
    errors_dropped = 0
    raw = emitted = 0
    all_rows = [] if emit else None
    for part in partials:
        raw += part["raw"]
        emitted += part["emitted"]
        for key in keys:
            dst, src = merged[key], part["per_bound"][key]
            for verdict, count in src["counts"].items():
                dst["counts"][verdict] += count
            dst["errors"] += src["errors"]
            dst["equality"].extend(src["equality"])
            dst["equality_dropped"] += src["equality_dropped"]
            dst["violations"].extend(src["violations"])
            dst["violations_dropped"] += src["violations_dropped"]
            if src["min"] is not None:
                if dst["min"] is None or src["min"] < dst["min"]:
                    dst["min"] = src["min"]
        for record in part["errors"]:
            if len(errors) < MAX_ERRORS:
                errors.append(record)
            else:
                errors_dropped += 1
        if emit:
            all_rows.extend(part["rows"])

    if pre_stats is None:
        # mask-chunk mode: re-check exhaustiveness across the merged chunks
        expected = sum(
            1 << (n * (n - 1) // 2) for n in range(corpus.n_min, corpus.n_max + 1)
        )
        if raw != expected:
            raise AssertionError("enumeration miscount: %d != %d" % (raw, expected))
        corpus_stats = {"raw": raw, "graphs": emitted, "dedup_dropped": 0}
    else:
        corpus_stats = {
            "raw": pre_stats["raw"],
            "graphs": pre_stats["graphs"],
            "dedup_dropped": pre_stats["dedup_dropped"],
        }

    totals = {}
    witnesses = {}
    min_slack = {}
    violations = {}
    trunc_eq = {}
    trunc_viol = {}
    for key in keys:
        bucket = merged[key]
        counts = dict(bucket["counts"])
        counts["errors"] = bucket["errors"]
        totals[key] = counts
        extra_eq = max(0, len(bucket["equality"]) - MAX_WITNESSES)
        witnesses[key] = bucket["equality"][:MAX_WITNESSES]
        trunc_eq[key] = bucket["equality_dropped"] + extra_eq
        extra_viol = max(0, len(bucket["violations"]) - MAX_VIOLATIONS)
        violations[key] = bucket["violations"][:MAX_VIOLATIONS]
        trunc_viol[key] = bucket["violations_dropped"] + extra_viol
        if bucket["min"] is None:
            min_slack[key] = None
        else:
            slack, desc, bound_id = bucket["min"]
            min_slack[key] = {"slack": slack, "input": desc, "bound_id": bound_id}

    corpus_summary = {
        "source": corpus.label,
        "connected_only": corpus.connected_only,
        "dedup": corpus.dedup,
    }
    corpus_summary.update(corpus_stats)

    report = SweepReport(
        corpus=corpus_summary,
        subsets=policy.label,
        bounds=list(keys),
        totals=totals,
        equality_witnesses=witnesses,
        min_positive_slack=min_slack,
        violations=violations,
        errors=errors,
        truncation={
            "equality_witnesses": trunc_eq,
            "violations": trunc_viol,
            "errors": errors_dropped,
        },
    )

    if emit:
        from .bounds import CSV_COLUMNS
        import csv

        with open(emit_certificates, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_COLUMNS)
            writer.writerows(all_rows)
    return report


def find_extremes(report, bound_id):
    """Equality witnesses and the minimal-positive-slack instance for one
    checker of a finished sweep."""
    if bound_id not in report.bounds:
        raise KeyError("bound %r not in this report" % (bound_id,))
    return {
        "bound_id": bound_id,
        "equality_witnesses": list(report.equality_witnesses[bound_id]),
        "min_positive_slack": report.min_positive_slack[bound_id],
    }
