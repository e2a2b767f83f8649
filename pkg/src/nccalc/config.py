"""YAML workbench configs and their assembly into engine objects."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import yaml

from .calculus import HermitianMetric, LieAlgebraSpec, RealCalculus, vzero
from .connection import levi_civita
from .errors import ConfigError, NCCalcError
from .expr import parse_element, parse_scalar
from .models import (clifford_map, sphere_calculus, torus_automorphism,
                     torus_automorphism_inverse, torus_calculus)
from .morphism import AlgebraMap, construct_hom, iso_psi_from_phi, make_embedding
from .qalgebra import SPHERE3, SPHERE3LOC, TORUS, AlgebraSpec, Derivation

CONFIG_DIR = Path(__file__).parent / "configs"
ALIASES = {"torus_in_s3_K1_lambda_half": "torus_in_s3_K1"}


@dataclass
class MetricSpec:
    diagonal: list = None
    entries: list = None
    inverse: list = None


@dataclass
class EmbeddingSpec:
    target: str = TORUS
    lam: str = None
    mu: str = None
    phi: dict = None
    psi: list = None
    complement: list = None
    isometric: bool = True


@dataclass
class WorkbenchConfig:
    name: str
    algebra: str
    q: str = "formal"
    conformal_factor: str = "one"
    conformal_element: str = None
    metric: MetricSpec = field(default_factory=MetricSpec)
    derivations: list = None
    embedding: EmbeddingSpec = None
    automorphism: list = None
    laplacian: list = None
    digest: str = ""


def resolve_config_path(ref):
    p = Path(ref)
    if p.is_file():
        return p
    name = ALIASES.get(ref, ref)
    for cand in (CONFIG_DIR / f"{name}.yaml", CONFIG_DIR / name):
        if cand.is_file():
            return cand
    raise ConfigError(f"no config file or builtin named {ref!r}")


def _require(d, key, where):
    if key not in d:
        raise ConfigError(f"{where}: missing key '{key}'")
    return d[key]


def _as_str(x):
    return x if isinstance(x, str) else str(x)


def load_config(ref) -> WorkbenchConfig:
    path = resolve_config_path(ref)
    raw = path.read_bytes()
    try:
        data = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return config_from_dict(data, str(path), hashlib.sha256(raw).hexdigest())


def config_from_dict(data, where="config", digest="") -> WorkbenchConfig:
    known = {"name", "algebra", "q", "conformal_factor", "metric", "derivations",
             "embedding", "automorphism", "laplacian"}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")
    alg = _require(data, "algebra", where)
    if alg not in (TORUS, SPHERE3, SPHERE3LOC):
        raise ConfigError(f"{where}: algebra must be torus, sphere3 or sphere3loc")
    q = _as_str(data.get("q", "formal"))
    if q not in ("formal", "one"):
        raise ConfigError(f"{where}: q must be 'formal' or 'one'")
    cf = data.get("conformal_factor", "one")
    element = None
    if isinstance(cf, dict):
        mode = cf.get("mode", "one")
        element = cf.get("element")
    else:
        mode = cf
    if mode not in ("one", "formal", "element"):
        raise ConfigError(f"{where}.conformal_factor: mode must be one, formal or element")
    if mode == "element" and not element:
        raise ConfigError(f"{where}.conformal_factor: element mode needs 'element'")
    m = data.get("metric") or {}
    if not isinstance(m, dict) or not ({"diagonal", "entries"} & set(m)):
        raise ConfigError(f"{where}.metric: give 'diagonal' or 'entries'")
    metric = MetricSpec(m.get("diagonal"), m.get("entries"), m.get("inverse"))
    emb = None
    if data.get("embedding") is not None:
        e = data["embedding"]
        w = f"{where}.embedding"
        if not isinstance(e, dict):
            raise ConfigError(f"{w}: must be a mapping")
        emb = EmbeddingSpec(
            target=e.get("target", TORUS),
            lam=None if e.get("lambda") is None else _as_str(e["lambda"]),
            mu=None if e.get("mu") is None else _as_str(e["mu"]),
            phi=e.get("phi"),
            psi=_require(e, "psi", w),
            complement=e.get("complement", []),
            isometric=bool(e.get("isometric", True)),
        )
        if emb.phi is None and (emb.lam is None or emb.mu is None):
            raise ConfigError(f"{w}: give either 'phi' or both 'lambda' and 'mu'")
    aut = data.get("automorphism")
    if aut is not None:
        if alg != TORUS or not isinstance(aut, list) or len(aut) != 4:
            raise ConfigError(f"{where}.automorphism: need [a, b, c, d] on the torus")
    lap = data.get("laplacian")
    if lap is not None and not isinstance(lap, list):
        lap = [lap]
    return WorkbenchConfig(
        name=data.get("name", Path(where).stem), algebra=alg, q=q, conformal_factor=mode,
        conformal_element=element, metric=metric, derivations=data.get("derivations"),
        embedding=emb, automorphism=aut, laplacian=lap, digest=digest)


class Workbench:
    """Engine objects assembled lazily from a :class:`WorkbenchConfig`."""

    def __init__(self, cfg: WorkbenchConfig, q=None):
        self.cfg = cfg
        self.q_one = (q or cfg.q) == "one"
        formal = 3 if cfg.conformal_factor == "formal" else 0
        self.algebra = AlgebraSpec(cfg.algebra, formal, self.q_one)

    def parse(self, text, algebra=None, where=""):
        try:
            return parse_element(_as_str(text), algebra or self.algebra)
        except NCCalcError as exc:
            raise ConfigError(f"{where}: {exc}") from exc

    @cached_property
    def calculus(self) -> RealCalculus:
        alg = self.algebra
        if self.cfg.derivations is None:
            return torus_calculus(alg) if alg.is_torus else sphere_calculus(alg)
        derivs = []
        for a, spec in enumerate(self.cfg.derivations):
            w = f"derivations[{a}]"
            if not isinstance(spec, dict):
                raise ConfigError(f"{w}: must be a mapping")
            images = {g: self.parse(v, where=f"{w}.{g}") for g, v in spec.items() if g != "formal"}
            formal = [Fraction(x) for x in spec.get("formal", [])] or None
            try:
                derivs.append(Derivation(alg, images, formal, name=f"d{a + 1}"))
            except (ValueError, NCCalcError) as exc:
                raise ConfigError(f"{w}: {exc}") from exc
        return RealCalculus(alg, LieAlgebraSpec.abelian(tuple(derivs)))

    @cached_property
    def K(self):
        alg = self.algebra
        mode = self.cfg.conformal_factor
        if mode == "one":
            return alg.one()
        if mode == "formal":
            return alg.gen("K")
        return self.parse(self.cfg.conformal_element, where="conformal_factor.element")

    @cached_property
    def metric(self) -> HermitianMetric:
        m = self.cfg.metric
        try:
            if m.diagonal is not None:
                diag = [self.parse(x, where=f"metric.diagonal[{a}]") * self.K
                        for a, x in enumerate(m.diagonal)]
                return HermitianMetric.diagonal(diag)
            entries = [[self.parse(x, where=f"metric.entries[{a}][{b}]") for b, x in enumerate(r)]
                       for a, r in enumerate(m.entries)]
            inv = None
            if m.inverse is not None:
                inv = [[self.parse(x, where=f"metric.inverse[{a}][{b}]") for b, x in enumerate(r)]
                       for a, r in enumerate(m.inverse)]
            return HermitianMetric.make(entries, inv)
        except NCCalcError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"metric: {exc}") from exc

    @cached_property
    def connection(self):
        return levi_civita(self.calculus, self.metric)

    @cached_property
    def target_algebra(self):
        emb = self.cfg.embedding
        if emb is None:
            return self.algebra
        return AlgebraSpec(emb.target, self.algebra.formal_indices, self.q_one)

    @cached_property
    def target_calculus(self):
        alg = self.target_algebra
        return torus_calculus(alg) if alg.is_torus else sphere_calculus(alg)

    @cached_property
    def phi(self):
        emb = self.cfg.embedding
        src, tgt = self.algebra, self.target_algebra
        if emb.phi is None:
            lam = parse_scalar(emb.lam)
            mu = parse_scalar(emb.mu)
            if self.q_one:
                lam, mu = lam.specialize_q(), mu.specialize_q()
            return clifford_map(src, tgt, lam, mu)
        images = {g: self.parse(v, tgt, where=f"embedding.phi.{g}") for g, v in emb.phi.items()}
        for sym in src.formal_symbols():
            images.setdefault(sym, tgt.gen(sym))
        try:
            return AlgebraMap(src, tgt, images)
        except ValueError as exc:
            raise ConfigError(f"embedding.phi: {exc}") from exc

    @cached_property
    def hom(self):
        if self.cfg.embedding is not None:
            return construct_hom(self.calculus, self.target_calculus, self.phi,
                                 self.cfg.embedding.psi)
        if self.cfg.automorphism is not None:
            a, b, c, d = (int(x) for x in self.cfg.automorphism)
            alg = self.algebra
            phi = torus_automorphism_inverse(alg, a, b, c, d)
            psi = iso_psi_from_phi(self.calculus, self.calculus, phi,
                                   torus_automorphism(alg, a, b, c, d))
            return construct_hom(self.calculus, self.calculus, phi, psi)
        raise ConfigError("config has neither an 'embedding' nor an 'automorphism' block")

    @cached_property
    def embedding(self):
        emb = self.cfg.embedding
        if emb is None:
            raise ConfigError("config has no 'embedding' block")
        n = self.calculus.rank
        comp = []
        for k, v in enumerate(emb.complement or []):
            if len(v) != n:
                raise ConfigError(f"embedding.complement[{k}]: need {n} coordinates")
            comp.append(tuple(self.parse(x, where=f"embedding.complement[{k}]") for x in v))
        return make_embedding(self.hom, comp, self.metric if emb.isometric else None,
                              isometric=emb.isometric)

    def zero_vector(self):
        return vzero(self.algebra, self.calculus.rank)
