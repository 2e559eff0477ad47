"""Run configuration: rank, copies, beta, q-mode, truncation caps, output.

Precedence is command-line flags > config file (``key = value`` lines,
``#`` comments) > defaults.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from ..scalar import SYMBOLIC, FloatField, RationalField

__all__ = ["ConfigError", "RunConfig", "DEFAULT_CAPS", "parse_caps", "parse_q", "read_config_file"]

DEFAULT_CAPS = {"M": 8, "L": 2, "I": 12, "W": 40, "tol": 1e-10, "deg": 4, "trials": 10}
_INT_CAPS = ("M", "L", "I", "W", "deg", "trials")


class ConfigError(ValueError):
    """Invalid configuration (reported with exit code 2)."""


def parse_caps(text):
    """``"M=8,I=12,tol=1e-12"`` -> dict merged over the defaults."""
    if text is None:
        return dict(DEFAULT_CAPS)
    if not text.strip():
        raise ConfigError("empty --caps: give at least one of " + ", ".join(DEFAULT_CAPS))
    caps = dict(DEFAULT_CAPS)
    for item in text.split(","):
        if "=" not in item:
            raise ConfigError(f"bad cap {item!r}; expected key=value")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in caps:
            raise ConfigError(f"unknown cap {k!r}")
        try:
            caps[k] = int(v) if k in _INT_CAPS else float(v)
        except ValueError:
            raise ConfigError(f"bad value for cap {k}: {v!r}") from None
        if k in _INT_CAPS and caps[k] < 0 or k == "tol" and caps[k] <= 0:
            raise ConfigError(f"cap {k} must be positive")
    for k in ("M", "I", "trials"):
        if caps[k] == 0:
            raise ConfigError(f"cap {k} must be positive")
    return caps


def _int_root(v, d):
    """Exact ``d``-th root of a non-negative integer or None."""
    r = round(v ** (1.0 / d)) if v else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** d == v:
            return c
    return None


def parse_q(text, beta=Fraction(0)):
    """``("symbolic", None)``, ``("rational", Fraction)`` or ``("float", float)``."""
    if text is None or text == "symbolic":
        return "symbolic", None
    try:
        if "." in text or "e" in text.lower():
            v = float(text)
            mode = "float"
        else:
            v = Fraction(text)
            mode = "rational"
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad --q {text!r}") from None
    if not 0 < v < 1:
        raise ConfigError("q must lie in (0, 1)")
    return mode, v


def read_config_file(path):
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{ln}: expected key = value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


@dataclass
class RunConfig:
    n: int = 1
    N: int = 1
    beta: Fraction = Fraction(0)
    q_mode: str = "symbolic"
    q: object = None
    caps: dict = field(default_factory=lambda: dict(DEFAULT_CAPS))
    format: str = "json"
    out: str = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError("--n must be >= 1")
        if self.N < 1:
            raise ConfigError("--N must be >= 1")
        self.beta = Fraction(self.beta)
        if not 0 <= self.beta < 1:
            raise ConfigError("beta must lie in [0, 1)")
        if self.format not in ("json", "csv"):
            raise ConfigError("--format must be json or csv")

    def field(self):
        """Coefficient field for normal forms."""
        if self.q_mode == "symbolic":
            return SYMBOLIC
        if self.q_mode == "float":
            return FloatField(float(self.q))
        D = 2 * self.beta.denominator
        num, den = _int_root(self.q.numerator, D), _int_root(self.q.denominator, D)
        if num is None or den is None:
            raise ConfigError(f"q = {self.q} is not a {D}-th power of a rational "
                              "(half powers of q and the lattice need exact roots)")
        return RationalField(Fraction(num, den), D)

    def numeric_q(self, default=0.5):
        return default if self.q is None else float(self.q)

    def rational_r(self, default=Fraction(1, 2)):
        """Base ``r`` of an exact rational field (q = r^D); default 1/2."""
        if self.q_mode != "rational":
            return default
        return self.field().r

    def as_dict(self):
        d = asdict(self)
        d["beta"] = str(self.beta)
        d["q"] = None if self.q is None else str(self.q)
        return d
