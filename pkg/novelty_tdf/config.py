"""Run configuration models and the key-value config file format."""

import re
from pathlib import Path
from typing import Literal, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    field_validator,
    model_validator,
)

from novelty_tdf.env import (
    DECAY_EXP1,
    DECAY_EXP2,
    DECAY_LINEAR,
    DECAY_SIGMOID,
    DEFAULT_ALPHA,
    DEFAULT_B,
    DEFAULT_BASELINE_SCHEME,
    DEFAULT_C_FA,
    DEFAULT_C_MISS,
    DEFAULT_DECAY,
    DEFAULT_FOLDS,
    DEFAULT_K1,
    DEFAULT_KL_EMPTY_WINDOW,
    DEFAULT_LAMBDA,
    DEFAULT_N,
    DEFAULT_P_TARGET,
    DEFAULT_SCHEME,
    DEFAULT_SEED,
    DEFAULT_WINDOW_GRID,
    FIELD_CONTENT_ONLY,
    FIELD_TITLE_SNIPPET,
    SCORER_AGG_CS,
    SCORER_MAX_CS,
    SCORER_MEAN_CS,
    SCORER_MIN_KL,
    SCORER_NS,
    SCORER_NS_T,
)

TfVariant = Literal["b", "n", "l", "k"]
IdfVariant = Literal["t", "s", "p", "b"]
NormVariant = Literal["n", "u", "d", "c", "p"]
DecayKind = Literal[DECAY_LINEAR, DECAY_EXP1, DECAY_EXP2, DECAY_SIGMOID]
ScorerName = Literal[
    SCORER_NS, SCORER_NS_T, SCORER_MAX_CS, SCORER_MEAN_CS, SCORER_MIN_KL, SCORER_AGG_CS
]

SMOOTHED_IDF_VARIANTS = ("s", "b")
RE_SMART = re.compile(r"^[bnlk][tspb][nudcp]$")
RE_CONFIG_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")


class WeightingScheme(BaseModel):
    """SMART triplet plus the BM25 parameters it may use."""

    model_config = ConfigDict(frozen=True)

    tf_variant: TfVariant
    idf_variant: IdfVariant
    norm_variant: NormVariant
    k1: float = Field(default=DEFAULT_K1, gt=0)
    b: float = Field(default=DEFAULT_B, ge=0, le=1)

    @model_validator(mode="after")
    def check_double_normalization(self):
        if self.tf_variant == "k" and self.b > 0 and self.norm_variant != "n":
            raise ValueError(
                f"Scheme {self.smart} with b={self.b} normalizes document length"
                " twice (BM25 tf already includes length normalization)"
            )
        return self

    @classmethod
    def from_smart(
        cls, code: str, k1: float = DEFAULT_K1, b: float = DEFAULT_B
    ) -> "WeightingScheme":
        if not RE_SMART.match(code):
            raise ValueError(
                f"Invalid SMART scheme {code!r}: expected one letter from each of"
                " [bnlk], [tspb], [nudcp]"
            )
        return cls(
            tf_variant=code[0], idf_variant=code[1], norm_variant=code[2], k1=k1, b=b
        )

    @property
    def smart(self) -> str:
        return f"{self.tf_variant}{self.idf_variant}{self.norm_variant}"

    def __str__(self) -> str:
        return self.smart


class DecayConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: DecayKind = DEFAULT_DECAY
    N: PositiveInt = DEFAULT_N
    alpha: float = DEFAULT_ALPHA

    @model_validator(mode="after")
    def check_alpha(self):
        if self.kind != DECAY_LINEAR and not self.alpha > 0:
            raise ValueError(f"Decay {self.kind} needs alpha > 0, got {self.alpha}")
        return self


class CostConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    c_miss: float = Field(default=DEFAULT_C_MISS, ge=0)
    c_fa: float = Field(default=DEFAULT_C_FA, ge=0)
    p_target: float = Field(default=DEFAULT_P_TARGET, gt=0, lt=1)


def _split_list(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip() != ""]
    return value


class RunConfig(BaseModel):
    """All knobs of a scoring and evaluation run."""

    SCORER: ScorerName = SCORER_NS
    SCHEME: str = DEFAULT_SCHEME
    BASELINE_SCHEME: str = DEFAULT_BASELINE_SCHEME
    N: PositiveInt = DEFAULT_N
    DECAY: DecayKind = DEFAULT_DECAY
    ALPHA: float = DEFAULT_ALPHA
    LAMBDA: float = Field(default=DEFAULT_LAMBDA, ge=0, le=1)
    K1: float = Field(default=DEFAULT_K1, gt=0)
    B: float = Field(default=DEFAULT_B, ge=0, le=1)
    FIELD: Literal[FIELD_TITLE_SNIPPET, FIELD_CONTENT_ONLY] = FIELD_TITLE_SNIPPET
    WARMUP: Literal["include", "exclude"] = "include"
    FOLDS: int = Field(default=DEFAULT_FOLDS, ge=2)
    SHUFFLE: bool = False
    SEED: int = DEFAULT_SEED
    INCLUDE_EMPTY: bool = False
    MIXED_CLUSTERS: list[str] = []
    MIN_CLUSTER_SIZE: PositiveInt = 1
    STOPWORDS: Optional[Path] = None
    C_MISS: float = Field(default=DEFAULT_C_MISS, ge=0)
    C_FA: float = Field(default=DEFAULT_C_FA, ge=0)
    P_TARGET: float = Field(default=DEFAULT_P_TARGET, gt=0, lt=1)
    KL_EMPTY_WINDOW: float = DEFAULT_KL_EMPTY_WINDOW
    PURGE_EVERY: Optional[PositiveInt] = None
    TIMING: bool = True  # False writes elapsed_ns = 0

    @field_validator("MIXED_CLUSTERS", mode="before")
    @classmethod
    def split_mixed_clusters(cls, value):
        return _split_list(value)

    @model_validator(mode="after")
    def check_schemes_and_decay(self):
        for code in (self.SCHEME, self.BASELINE_SCHEME):
            scheme = WeightingScheme.from_smart(code, k1=self.K1, b=self.B)
            if scheme.idf_variant not in SMOOTHED_IDF_VARIANTS:
                raise ValueError(
                    f"Scheme {code} uses unsmoothed IDF variant"
                    f" {scheme.idf_variant!r}, which is undefined for terms unseen"
                    f" in the window. Use one of {SMOOTHED_IDF_VARIANTS}"
                )
        DecayConfig(kind=self.DECAY, N=self.N, alpha=self.ALPHA)
        return self

    @property
    def weighting_scheme(self) -> WeightingScheme:
        return WeightingScheme.from_smart(self.SCHEME, k1=self.K1, b=self.B)

    @property
    def baseline_scheme(self) -> WeightingScheme:
        return WeightingScheme.from_smart(self.BASELINE_SCHEME, k1=self.K1, b=self.B)

    @property
    def decay_config(self) -> DecayConfig:
        return DecayConfig(kind=self.DECAY, N=self.N, alpha=self.ALPHA)

    @property
    def cost_config(self) -> CostConfig:
        return CostConfig(c_miss=self.C_MISS, c_fa=self.C_FA, p_target=self.P_TARGET)

    @property
    def purge_every(self) -> int:
        return self.PURGE_EVERY if self.PURGE_EVERY is not None else self.N

    @classmethod
    def from_sources(
        cls, cli_values: Optional[dict] = None, fpath_config: Optional[Path] = None
    ) -> "RunConfig":
        """Build a config from CLI values, overridden by a config file if given."""
        return cls(**merge_config_sources(cli_values, fpath_config, cls))


class GridConfig(BaseModel):
    """Parameter grid for the sweep subcommand."""

    SCORERS: list[ScorerName] = [SCORER_NS]
    SCHEMES: list[str] = [DEFAULT_SCHEME]
    WINDOWS: list[PositiveInt] = DEFAULT_WINDOW_GRID
    DECAYS: list[DecayKind] = [DEFAULT_DECAY]
    ALPHAS: list[float] = [DEFAULT_ALPHA]
    N_JOBS: int = 1

    @field_validator(
        "SCORERS", "SCHEMES", "WINDOWS", "DECAYS", "ALPHAS", mode="before"
    )
    @classmethod
    def split_lists(cls, value):
        return _split_list(value)

    @field_validator("SCHEMES")
    @classmethod
    def check_schemes(cls, schemes: list[str]) -> list[str]:
        for code in schemes:
            WeightingScheme.from_smart(code)
        return schemes


def load_config_file(fpath: Path | str) -> dict[str, str]:
    """Parse a UTF-8 file of ``KEY = value`` lines; '#' starts a comment."""
    fpath = Path(fpath)
    if not fpath.exists():
        raise FileNotFoundError(f"Config file {fpath} does not exist")

    values = {}
    for i_line, line in enumerate(fpath.read_text(encoding="utf-8").splitlines()):
        line = line.split("#", 1)[0]
        if line.strip() == "":
            continue
        match = RE_CONFIG_LINE.match(line)
        if match is None:
            raise ValueError(
                f"Cannot parse line {i_line + 1} of config file {fpath}: {line!r}"
            )
        key, value = match.groups()
        values[key.upper()] = value
    return values


def merge_config_sources(
    cli_values: Optional[dict], fpath_config: Optional[Path], model: type[BaseModel]
) -> dict:
    merged = {
        key: value for key, value in (cli_values or {}).items() if value is not None
    }
    if fpath_config is not None:
        merged.update(load_config_file(fpath_config))
    # a file may hold keys for both models
    return {key: value for key, value in merged.items() if key in model.model_fields}
