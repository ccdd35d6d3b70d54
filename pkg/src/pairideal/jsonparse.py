"""Module responsible for reading configuration files and writing JSON reports."""

import json
from dataclasses import dataclass, replace
from typing import Any

from .classify import DEFAULT_BUDGET
from .errors import ConfigError, PreconditionError
from .groebner import DEFAULT_CAPS, EngineCaps
from .minprimes import DEFAULT_ENUM_CAP

CAP_KEYS = ("max_basis_size", "max_poly_degree", "max_pair_reductions", "max_admissible_sets")


@dataclass(frozen=True)
class Settings:
    """Caps and budgets of a run."""

    caps: EngineCaps = DEFAULT_CAPS
    enum_cap: int = DEFAULT_ENUM_CAP
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):  # noqa: D105
        if self.enum_cap < 1:
            raise PreconditionError("Cap 'max_admissible_sets' must be positive.")
        if self.budget < 0:
            raise PreconditionError("'budget' must not be negative.")

    def override(
        self,
        max_basis_size: int | None = None,
        max_poly_degree: int | None = None,
        max_pair_reductions: int | None = None,
        max_admissible_sets: int | None = None,
        budget: int | None = None,
    ) -> "Settings":
        """Return a copy with every given value replaced; None keeps the current one."""
        caps = replace(
            self.caps,
            **{
                k: v
                for k, v in (
                    ("max_basis_size", max_basis_size),
                    ("max_poly_degree", max_poly_degree),
                    ("max_pair_reductions", max_pair_reductions),
                )
                if v is not None
            },
        )
        return Settings(
            caps,
            self.enum_cap if max_admissible_sets is None else max_admissible_sets,
            self.budget if budget is None else budget,
        )


def _integer(value: object, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"'{name}' must be an integer.")
    return value


def processjson(
    path: str,
    visited_jsons: list[str] | None = None,
    collected: dict[str, int] | None = None,
) -> dict[str, int]:
    """Take a json path entry point and gather all values set in it.

    ONLY `path` should be used, all other arguments are meant for internal use only.
    Values of a file override those of its preloads.

    Args:
    path(str): the path to the json file.
    visited_jsons(list[str] | None): gathers what json files have been visited.
    collected(dict[str, int] | None): gathers the values.

    Returns:
    dict[str, int]: cap names and "budget" mapped to their values.

    Raises:
    RecursionError: If there is a circular process in the "preloads" process.
    ConfigError: If the contents of the json are not of the correct type.

    """
    if collected is None:
        collected = {}
    if visited_jsons is None:
        visited_jsons = []

    if path in visited_jsons:
        raise RecursionError("Circular preloading.")
    visited_jsons.append(path)

    with open(path) as file:
        try:
            data: Any = json.load(file)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{path} is not valid json: {err.msg}.") from err

    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a json object.")

    if "preloads" in data:
        if not isinstance(data["preloads"], list):
            raise ConfigError("'preloads' must be a list.")

        # other config files that should be loaded before this one
        # useful to share a set of caps between several runs

        for preload in data["preloads"]:  # pyright: ignore[reportUnknownVariableType]
            if not isinstance(preload, str):
                raise ConfigError("'preloads' must be a list of strings.")
            _ = processjson(preload, visited_jsons, collected)

    if "caps" in data:
        caps: Any = data["caps"]
        if not isinstance(caps, dict):
            raise ConfigError("'caps' must be an object.")
        for key, value in caps.items():  # pyright: ignore[reportUnknownVariableType]
            if key not in CAP_KEYS:
                raise ConfigError(f"Unknown cap '{key}'.")
            collected[key] = _integer(value, key)

    if "budget" in data:
        collected["budget"] = _integer(data["budget"], "budget")

    return collected


def load_config(path: str | None) -> Settings:
    """Read the settings of a run from a config file, or the defaults without one.

    Raises:
    ConfigError: for badly typed or out of range values.

    """
    if path is None:
        return Settings()
    values = processjson(path)
    try:
        return Settings().override(**values)
    except PreconditionError as err:
        raise ConfigError(str(err)) from err


def render_json(data: object) -> str:
    """Serialize a report, keeping the key order of the dictionaries."""
    return json.dumps(data, indent=2)
