"""Job orchestration: prediction, matrix build/cache, rank, spectrum, verify.

The report dictionaries produced here are the single source of truth for both
the CLI and the HTTP service; they are byte-stable across runs (canonical
orderings everywhere, big integers as decimal strings).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import finitegeom, jantzen
from .exactlinalg import MatrixModP, check_eigen_powers, gram, rank_mod_p
from .finitegeom import (GeometryProblem, IncidenceMatrix, SizeCapError,
                         UnsupportedGeometryError, build_incidence,
                         finite_field, labels_to_text, matrix_to_text,
                         parse_matrix_text)
from .jantzen import (lambda_opp, resolve_simple, steinberg_rank_power,
                      truncated_poly_dim, twist_order)
from .rootdata import ConfigurationError, RootSystemSpec, build_root_system
from .weylgroup import complement, normalize_typeset, opposite_type, w_star

SCHEMA = "opprank/1"

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_MISMATCH = 2
EXIT_UNRESOLVED = 3
EXIT_UNSUPPORTED = 4

VERDICT_EXIT = {
    "MATCH": EXIT_OK,
    None: EXIT_OK,
    "MISMATCH": EXIT_MISMATCH,
    "UNRESOLVED_PREDICTION": EXIT_UNRESOLVED,
    "GEOMETRY_UNSUPPORTED": EXIT_UNSUPPORTED,
}


@dataclass
class JobConfig:
    family: str
    rank: int
    cotype: tuple[int, ...]
    p: int
    t: int = 1
    out: Path = field(default_factory=lambda: Path("opprank_out"))
    twist_orbits: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        self.family = self.family.upper()
        spec = RootSystemSpec(self.family, self.rank)
        rs = build_root_system(spec)
        ncot = len(self.twist_orbits) if self.twist_orbits else rs.rank
        self.cotype = normalize_typeset(ncot, self.cotype)
        if not jantzen.is_prime(self.p):
            raise ConfigurationError(f"p = {self.p} is not prime")
        if self.t < 1:
            raise ConfigurationError(f"t = {self.t} must be >= 1")
        self.out = Path(self.out)

    @property
    def q(self) -> int:
        return self.p ** self.t

    @property
    def system(self):
        return build_root_system(RootSystemSpec(self.family, self.rank))


def _matrix_cache_path(cfg: JobConfig) -> Path:
    key = f"{cfg.family}{cfg.rank} q={cfg.q} J={list(cfg.cotype)}"
    digest = hashlib.sha256(key.encode()).hexdigest()[:12]
    cot = "-".join(str(i) for i in cfg.cotype) or "none"
    return cfg.out / f"oppmat_{cfg.family}{cfg.rank}_q{cfg.q}_J{cot}_{digest}.mat"


def geometry_problem(cfg: JobConfig) -> GeometryProblem:
    if cfg.twist_orbits is not None:
        raise UnsupportedGeometryError(
            "twisted-group geometries are not enumerated; only the highest "
            "weight is computed for them")
    if cfg.q > 16:
        raise UnsupportedGeometryError(
            f"q = {cfg.q} exceeds the supported field bound 16")
    fld = finite_field(cfg.p, cfg.t)
    return GeometryProblem(cfg.family, cfg.rank, fld, cfg.cotype)


def obtain_matrix(cfg: JobConfig) -> tuple[IncidenceMatrix, Path, bool]:
    """Build the incidence matrix, or reload it from the output-dir cache.

    Returns (matrix, file path, cache_hit).
    """
    problem = geometry_problem(cfg)
    path = _matrix_cache_path(cfg)
    if path.exists():
        meta, bitrows = parse_matrix_text(path.read_text())
        rs = cfg.system
        lws = len(w_star(rs, cfg.cotype))
        target = cfg.q ** lws
        if any(r.bit_count() != target for r in bitrows):
            raise finitegeom.ConsistencyError(
                f"cached matrix {path} violates the row-sum law")
        m = IncidenceMatrix(meta["family"], meta["rank"], meta["q"],
                            meta["cotype_row"], meta["cotype_col"],
                            tuple(range(meta["nrows"])),  # labels not reloaded
                            tuple(range(meta["ncols"])),
                            tuple(bitrows), lws)
        return m, path, True

    m = build_incidence(problem)
    cfg.out.mkdir(parents=True, exist_ok=True)
    path.write_text(matrix_to_text(m))
    stem = path.with_suffix("")
    Path(f"{stem}.rows.labels").write_text(labels_to_text(m.row_labels))
    Path(f"{stem}.cols.labels").write_text(labels_to_text(m.col_labels))
    return m, path, False


def _type_a_closed_form(cfg: JobConfig) -> Optional[int]:
    """Truncated-polynomial-ring dimension for type A single-node types."""
    if cfg.family != "A" or cfg.twist_orbits is not None:
        return None
    typ = complement(cfg.rank, cfg.cotype)
    if len(typ) != 1:
        return None
    i = typ[0]
    n = cfg.rank + 1
    return truncated_poly_dim(n, cfg.p, (n - i) * (cfg.p - 1))


def predict_report(cfg: JobConfig) -> dict:
    """Prediction half of a verify report: highest weight, resolution, rank."""
    rs = cfg.system
    lam_q = lambda_opp(rs, cfg.cotype, cfg.p, cfg.t, cfg.twist_orbits)
    if cfg.twist_orbits is None:
        lam_p = lambda_opp(rs, cfg.cotype, cfg.p, 1)
        exponent = cfg.t
    else:
        # resolve at level p: q0 = p means t = e in the twisted formula
        e = twist_order(rs, cfg.twist_orbits)
        if cfg.t % e != 0:
            raise ConfigurationError(
                f"t = {cfg.t} must be divisible by the twist order {e}")
        lam_p = lambda_opp(rs, cfg.cotype, cfg.p, e, cfg.twist_orbits)
        exponent = cfg.t // e
    resolution = resolve_simple(rs, lam_p, cfg.p)
    predicted = (str(steinberg_rank_power(resolution.dim, exponent))
                 if resolution.resolved else None)
    closed = _type_a_closed_form(cfg)

    report = {
        "schema": SCHEMA,
        "config": {
            "family": cfg.family,
            "rank": cfg.rank,
            "cotype_J": list(cfg.cotype),
            "p": cfg.p,
            "t": cfg.t,
            "q": str(cfg.q),
            "twist_orbits": ([list(o) for o in cfg.twist_orbits]
                             if cfg.twist_orbits else None),
        },
        "lambda_opp": list(lam_q),
        "lambda_opp_at_prime": list(lam_p),
        "resolution": resolution.to_json(),
        "steinberg_exponent": exponent,
        "predicted_rank": predicted,
        "truncated_poly_cross_check":
            str(steinberg_rank_power(closed, exponent))
            if closed is not None else None,
        "verdict": None if resolution.resolved else "UNRESOLVED_PREDICTION",
    }
    if cfg.twist_orbits is None:
        report["config"]["cotype_K"] = list(opposite_type(rs, cfg.cotype))
    return report


# cache hits are deliberately not reported: reports must be byte-identical
# whether a matrix was rebuilt or reloaded
def _geometry_section(cfg: JobConfig, m: IncidenceMatrix, path: Path) -> dict:
    return {
        "supported": True,
        "reason": None,
        "num_rows": m.nrows,
        "num_cols": m.ncols,
        "row_sum": str(m.row_sum),
        "l_wstar": m.wstar_length,
        "matrix_file": str(path),
    }


def _unsupported_geometry_section(reason: str) -> dict:
    return {
        "supported": False,
        "reason": reason,
        "num_rows": None,
        "num_cols": None,
        "row_sum": None,
        "l_wstar": None,
        "matrix_file": None,
    }


def build_report(cfg: JobConfig) -> dict:
    m, path, _ = obtain_matrix(cfg)
    return {"schema": SCHEMA, "geometry": _geometry_section(cfg, m, path)}


def rank_report(cfg: JobConfig) -> dict:
    m, path, _ = obtain_matrix(cfg)
    measured = rank_mod_p(MatrixModP.from_incidence(m, cfg.p))
    return {"schema": SCHEMA,
            "geometry": _geometry_section(cfg, m, path),
            "measured_rank": measured}


def verify_report(cfg: JobConfig) -> dict:
    """Full pipeline: predict, build + persist, rank, compare."""
    report = predict_report(cfg)
    try:
        m, path, _ = obtain_matrix(cfg)
    except (UnsupportedGeometryError, SizeCapError) as exc:
        report["geometry"] = _unsupported_geometry_section(str(exc))
        report["measured_rank"] = None
        report["verdict"] = "GEOMETRY_UNSUPPORTED"
        return report

    measured = rank_mod_p(MatrixModP.from_incidence(m, cfg.p))
    report["geometry"] = _geometry_section(cfg, m, path)
    report["measured_rank"] = measured
    if report["predicted_rank"] is None:
        report["verdict"] = "UNRESOLVED_PREDICTION"
    elif int(report["predicted_rank"]) == measured:
        report["verdict"] = "MATCH"
    else:
        report["verdict"] = "MISMATCH"
    return report


def spectrum_report(cfg: JobConfig) -> dict:
    m, path, _ = obtain_matrix(cfg)
    result = check_eigen_powers(gram(m), cfg.q, 2 * m.wstar_length)
    return {"schema": SCHEMA,
            "geometry": _geometry_section(cfg, m, path),
            "spectrum": {**result.to_json(), "q": str(cfg.q),
                         "max_exp": 2 * m.wstar_length}}


def spectrum_report_from_file(path: Path) -> dict:
    """Spectral report for a persisted matrix file."""
    meta, bitrows = parse_matrix_text(Path(path).read_text())
    rs = build_root_system(RootSystemSpec(meta["family"], meta["rank"]))
    lws = len(w_star(rs, meta["cotype_row"]))
    m = IncidenceMatrix(meta["family"], meta["rank"], meta["q"],
                        meta["cotype_row"], meta["cotype_col"],
                        tuple(range(meta["nrows"])), tuple(range(meta["ncols"])),
                        tuple(bitrows), lws)
    result = check_eigen_powers(gram(m), meta["q"], 2 * lws)
    return {
        "schema": SCHEMA,
        "matrix_file": str(path),
        "spectrum": {**result.to_json(), "q": str(meta["q"]), "max_exp": 2 * lws},
    }


def _prime_of(q: int) -> int:
    f = 2
    while f * f <= q:
        if q % f == 0:
            return f
        f += 1
    return q


def rank_report_from_file(path: Path, p: Optional[int] = None) -> dict:
    meta, bitrows = parse_matrix_text(Path(path).read_text())
    if p is None:
        p = _prime_of(meta["q"])  # header carries q = p^t
    m = MatrixModP.from_bitrows(bitrows, meta["ncols"]) if p == 2 else \
        MatrixModP.from_rows(p, [[(r >> j) & 1 for j in range(meta["ncols"])]
                                 for r in bitrows])
    return {"schema": SCHEMA, "matrix_file": str(path),
            "p": p, "measured_rank": rank_mod_p(m)}


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def exit_code_for(report: dict) -> int:
    return VERDICT_EXIT.get(report.get("verdict"), EXIT_OK)
