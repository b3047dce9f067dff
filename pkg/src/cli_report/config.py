"""Suite configuration: INI text with one ``[suite]`` and many ``[case <id>]`` sections."""

import configparser
import dataclasses
import logging
from dataclasses import dataclass, field
from pathlib import Path

from src.common.errors import ConfigError
from src.grid_domain import Split
from src.inequality_harness import Tolerances

logger = logging.getLogger(__name__)

CHECK_KINDS = (
    "hl",
    "riesz",
    "ps",
    "schwarz-couple",
    "mollified",
    "riesz-slice",
    "nonlinear-ps",
    "weighted-ps",
    "weak-form",
    "talenti-steiner",
    "talenti-schwarz",
    "gradient",
    "dual",
)

DEFAULT_OUT = Path("reports")
CASE_PREFIX = "case "


@dataclass(frozen=True)
class CaseConfig:
    case_id: str
    shape: str
    h: float
    split: Split | None = None
    function: str = "cone"
    w: str = "u*"
    p: float = 2.0
    seed: int = 0
    checks: tuple[str, ...] = CHECK_KINDS


@dataclass(frozen=True)
class SuiteConfig:
    cases: tuple[CaseConfig, ...] = ()
    tolerances: Tolerances = field(default_factory=Tolerances)
    out: Path = DEFAULT_OUT
    strict: bool = False

    def with_overrides(
        self,
        out: Path | None = None,
        strict: bool | None = None,
        seed: int | None = None,
        h: float | None = None,
    ) -> "SuiteConfig":
        """Command-line values replace file values."""
        cases = self.cases
        if seed is not None:
            cases = tuple(dataclasses.replace(c, seed=seed) for c in cases)
        if h is not None:
            if not h > 0:
                raise ConfigError("bad config", f"h must be positive, got {h}")
            cases = tuple(dataclasses.replace(c, h=h) for c in cases)
        return SuiteConfig(
            cases,
            self.tolerances,
            self.out if out is None else out,
            self.strict if strict is None else strict,
        )


def _section_line(text: str, name: str) -> int | None:
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip() == f"[{name}]":
            return number
    return None


def parse_checks(raw: str, where: str = "checks") -> tuple[str, ...]:
    names = tuple(part.strip() for part in raw.split(",") if part.strip())
    unknown = [n for n in names if n not in CHECK_KINDS]
    if unknown:
        raise ConfigError("bad config", f"{where}: unknown checks {', '.join(unknown)}")
    return names


def parse_split(raw: str, where: str = "split") -> Split | None:
    if raw.strip().lower() in ("", "none"):
        return None
    try:
        n, m = (int(part) for part in raw.split(","))
    except ValueError as exc:
        raise ConfigError("bad config", f"{where}: split must be 'n,m'") from exc
    return n, m


def _case(section: configparser.SectionProxy, defaults: dict, line: int | None) -> CaseConfig:
    case_id = section.name[len(CASE_PREFIX) :].strip()
    where = f"[{section.name}]"
    try:
        if "shape" not in section:
            raise ConfigError("bad config", f"{where}: missing key 'shape'", line=line)
        h = section.getfloat("h", fallback=1.0 / 64)
        if not h > 0:
            raise ConfigError("bad config", f"{where}: h must be positive", line=line)
        return CaseConfig(
            case_id=case_id,
            shape=section["shape"],
            h=h,
            split=parse_split(section.get("split", "none"), where),
            function=section.get("function", "cone"),
            w=section.get("w", "u*"),
            p=section.getfloat("p", fallback=2.0),
            seed=section.getint("seed", fallback=defaults["seed"]),
            checks=(
                parse_checks(section["checks"], where)
                if "checks" in section
                else defaults["checks"]
            ),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("bad config", f"{where}: {exc}", line=line) from exc


def parse_suite(text: str, source: str = "<suite>") -> SuiteConfig:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text, source=source)
    except configparser.DuplicateSectionError as exc:
        raise ConfigError("duplicate case id", exc.section, line=exc.lineno) from exc
    except configparser.DuplicateOptionError as exc:
        raise ConfigError("bad config", f"duplicate key {exc.option}", line=exc.lineno) from exc
    except configparser.MissingSectionHeaderError as exc:
        raise ConfigError("bad config", "missing section header", line=exc.lineno) from exc
    except configparser.ParsingError as exc:
        line = exc.errors[0][0] if exc.errors else None
        raise ConfigError("bad config", "unparseable line", line=line) from exc

    suite = parser["suite"] if parser.has_section("suite") else parser[configparser.DEFAULTSECT]
    try:
        tolerances = Tolerances(
            c1=suite.getfloat("c1", fallback=8.0),
            c2=suite.getfloat("c2", fallback=8.0),
            c3=suite.getfloat("c3", fallback=8.0),
            riesz_cap=suite.getint("riesz_cap", fallback=4096),
        )
        defaults = {
            "seed": suite.getint("seed", fallback=0),
            "checks": (
                parse_checks(suite["checks"], "[suite]") if "checks" in suite else CHECK_KINDS
            ),
        }
        strict = suite.getboolean("strict", fallback=False)
    except ConfigError:
        raise
    except ValueError as exc:
        line = _section_line(text, "suite")
        raise ConfigError("bad config", f"[suite]: {exc}", line=line) from exc
    out = Path(suite.get("out", str(DEFAULT_OUT)))

    cases = []
    for name in parser.sections():
        if name == "suite":
            continue
        if not name.startswith(CASE_PREFIX) or not name[len(CASE_PREFIX) :].strip():
            line = _section_line(text, name)
            raise ConfigError("bad config", f"unknown section [{name}]", line=line)
        cases.append(_case(parser[name], defaults, _section_line(text, name)))
    cases.sort(key=lambda c: c.case_id)
    logger.debug("suite source=%s cases=%d", source, len(cases))
    return SuiteConfig(tuple(cases), tolerances, out, strict)


def load_suite(path: Path) -> SuiteConfig:
    return parse_suite(Path(path).read_text(encoding="utf-8"), str(path))
