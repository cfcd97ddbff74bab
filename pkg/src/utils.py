import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from src.errors import ParameterError

ENV_PREFIX = "GAMEDIST_"


def get_env(var_dict: dict, prefix: str = ENV_PREFIX, required: bool = True) -> dict:
    """
    Fill `var_dict` from the environment. Keys are looked up upper-cased with `prefix`.

    Args:
        var_dict (dict): keys to read, values are the defaults.
        prefix (str): prefix prepended to every upper-cased key.
        required (bool): raise when a key is unset and its default is None.

    Returns:
        dict: the same dictionary with the environment values filled in.
    """
    for key, default in var_dict.items():
        name = f"{prefix}{key.upper()}"
        value = os.environ.get(name)
        if value is None:
            if required and default is None:
                raise ParameterError(f"Required environment variable {name} is not set")
            value = default
        var_dict[key] = value
    return var_dict


@dataclass(frozen=True)
class Settings:
    aut_cap: int = 64
    node_budget: int = 10**9
    color_cap: int = 5
    samples: int = 100_000
    exhaustive_cap: int = 20_000_000
    report_dir: str = "reports"
    log_level: str = "WARNING"


def load_settings(dotenv: bool = True) -> Settings:
    """Read settings from `GAMEDIST_*` variables, optionally after loading a .env file."""
    if dotenv:
        load_dotenv()
    defaults = Settings()
    values = get_env(
        {
            "aut_cap": defaults.aut_cap,
            "node_budget": defaults.node_budget,
            "color_cap": defaults.color_cap,
            "samples": defaults.samples,
            "exhaustive_cap": defaults.exhaustive_cap,
            "report_dir": defaults.report_dir,
            "log_level": defaults.log_level,
        },
        required=False,
    )
    try:
        return Settings(
            aut_cap=int(values["aut_cap"]),
            node_budget=int(values["node_budget"]),
            color_cap=int(values["color_cap"]),
            samples=int(values["samples"]),
            exhaustive_cap=int(values["exhaustive_cap"]),
            report_dir=str(values["report_dir"]),
            log_level=str(values["log_level"]).upper(),
        )
    except ValueError as e:
        raise ParameterError(f"Invalid {ENV_PREFIX} setting: {e}") from e


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
