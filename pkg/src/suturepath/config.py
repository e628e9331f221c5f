"""JSON run configuration: parsing, validation, defaults.

Schema (all angles radians, all lengths mm; unknown keys are rejected):

    {
      "tissue":  {"tissue_angle_rad": 2.513..., "wound_width_mm": 5.5,
                  "bite_distance_mm": 16.0, "slope_convention": "descending-away"},
      "desired": {"entry_angle_rad": ..., "entry_error_mm": ..., "depth_mm": ...,
                  "symmetry_offset_mm": ..., "exit_angle_rad": ..., "exit_error_mm": ...},
      "weights": [1, 1, 1, 1, 1, 1],
      "search":  {"center_x_mm": [min, max, step], "center_y_mm": [min, max, step],
                  "diameters_mm": [30.55] | "diameter_range_mm": [min, max, step]
                  | "catalog": "needles.json",
                  "shapes": ["1/4", "3/8", "1/2", "5/8"]},
      "grasp":   {"min_margin_rad": 0.1745...},
      "normalization": "minmax" | "fixed"
    }

"desired" entries are optional and default to the ideal pass (perpendicular,
zero error, centered, depth of half the bite distance).  A catalog path is
resolved relative to the config file; it supplies the searched diameters
(and, unless given explicitly, the searched shapes) and enables catalog
matching in reports.  Catalog format:

    {"needles": [{"name": "CTX", "shape": "1/2", "diameter_mm": 30.55}]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .feasibility import GraspPolicy
from .geometry import TissueGeometry
from .metrics import DesiredParameters, NEEDLE_SHAPES
from .optimizer import NORMALIZATION_MODES, CatalogEntry, NeedleCatalog, SearchSpace, Weights


class ConfigError(ValueError):
    """Invalid run configuration or catalog file."""


def _load_json(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return data


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown field(s) in {where}: {', '.join(unknown)}")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where} must be a number")
    return float(value)


def _triple(value, where: str) -> tuple[float, float, float]:
    if not isinstance(value, list) or len(value) != 3:
        raise ConfigError(f"{where} must be a 3-element [min, max, step] list")
    return tuple(_number(v, where) for v in value)


def parse_shape(value, where: str = "shape") -> float:
    """Accept a fraction string like "1/2" or a plain number; validate membership."""
    if isinstance(value, str):
        try:
            shape = float(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{where}: cannot parse fraction {value!r}") from exc
    else:
        shape = _number(value, where)
    if shape not in NEEDLE_SHAPES:
        raise ConfigError(f"{where}: {value!r} is not one of the available arc fractions")
    return shape


def format_shape(shape: float) -> str:
    return str(Fraction(shape).limit_denominator(16))


def load_catalog(path: Path) -> NeedleCatalog:
    data = _load_json(path)
    _check_keys(data, {"needles"}, str(path))
    needles = data.get("needles")
    if not isinstance(needles, list) or not needles:
        raise ConfigError(f"{path}: 'needles' must be a non-empty list")
    entries = []
    for i, rec in enumerate(needles):
        where = f"{path}: needles[{i}]"
        if not isinstance(rec, dict):
            raise ConfigError(f"{where} must be an object")
        _check_keys(rec, {"name", "shape", "diameter_mm"}, where)
        for key in ("name", "shape", "diameter_mm"):
            if key not in rec:
                raise ConfigError(f"{where} is missing '{key}'")
        if not isinstance(rec["name"], str) or not rec["name"]:
            raise ConfigError(f"{where}: name must be a non-empty string")
        entries.append(
            CatalogEntry(
                name=rec["name"],
                shape=parse_shape(rec["shape"], f"{where}.shape"),
                diameter=_number(rec["diameter_mm"], f"{where}.diameter_mm"),
            )
        )
    try:
        return NeedleCatalog(tuple(entries))
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    tissue: TissueGeometry
    desired: DesiredParameters
    weights: Weights
    space: SearchSpace
    policy: GraspPolicy
    normalization: str
    catalog: NeedleCatalog | None
    catalog_path: str | None

    def echo(self) -> dict:
        """The effective configuration, for embedding in reports (exact values)."""
        return {
            "tissue": {
                "tissue_angle_rad": self.tissue.tissue_angle,
                "wound_width_mm": self.tissue.wound_width,
                "bite_distance_mm": self.tissue.bite_distance,
                "slope_convention": self.tissue.slope_convention,
            },
            "desired": {
                "entry_angle_rad": self.desired.entry_angle,
                "entry_error_mm": self.desired.entry_error,
                "depth_mm": self.desired.depth,
                "symmetry_offset_mm": self.desired.symmetry_offset,
                "exit_angle_rad": self.desired.exit_angle,
                "exit_error_mm": self.desired.exit_error,
            },
            "weights": list(self.weights.values),
            "search": {
                "center_x_mm": list(self.space.center_x_grid),
                "center_y_mm": list(self.space.center_y_grid),
                **(
                    {"diameters_mm": list(self.space.diameters)}
                    if self.space.diameters is not None
                    else {"diameter_range_mm": list(self.space.diameter_range)}
                ),
                "shapes": [format_shape(s) for s in self.space.shape_values()],
                **({"catalog": self.catalog_path} if self.catalog_path is not None else {}),
            },
            "grasp": {"min_margin_rad": self.policy.min_margin},
            "normalization": self.normalization,
        }


def load_config(path: str | Path) -> RunConfig:
    """Parse and validate a run configuration file.

    Raises ConfigError naming the violated invariant or offending field.
    """
    path = Path(path)
    data = _load_json(path)
    _check_keys(data, {"tissue", "desired", "weights", "search", "grasp", "normalization"}, str(path))

    if "tissue" not in data or not isinstance(data["tissue"], dict):
        raise ConfigError("config requires a 'tissue' object")
    tis = data["tissue"]
    _check_keys(tis, {"tissue_angle_rad", "wound_width_mm", "bite_distance_mm", "slope_convention"}, "tissue")
    for key in ("tissue_angle_rad", "wound_width_mm", "bite_distance_mm"):
        if key not in tis:
            raise ConfigError(f"tissue is missing '{key}'")
    try:
        tissue = TissueGeometry(
            tissue_angle=_number(tis["tissue_angle_rad"], "tissue.tissue_angle_rad"),
            wound_width=_number(tis["wound_width_mm"], "tissue.wound_width_mm"),
            bite_distance=_number(tis["bite_distance_mm"], "tissue.bite_distance_mm"),
            slope_convention=tis.get("slope_convention", "descending-away"),
        )
    except ValueError as exc:
        raise ConfigError(f"tissue: {exc}") from exc

    des = data.get("desired", {})
    if not isinstance(des, dict):
        raise ConfigError("'desired' must be an object")
    _check_keys(
        des,
        {"entry_angle_rad", "entry_error_mm", "depth_mm", "symmetry_offset_mm", "exit_angle_rad", "exit_error_mm"},
        "desired",
    )
    key_to_field = {
        "entry_angle_rad": "entry_angle",
        "entry_error_mm": "entry_error",
        "depth_mm": "depth",
        "symmetry_offset_mm": "symmetry_offset",
        "exit_angle_rad": "exit_angle",
        "exit_error_mm": "exit_error",
    }
    overrides = {key_to_field[k]: _number(v, f"desired.{k}") for k, v in des.items()}
    try:
        desired = DesiredParameters.for_bite_distance(tissue.bite_distance, **overrides)
    except ValueError as exc:
        raise ConfigError(f"desired: {exc}") from exc

    wts = data.get("weights", [1.0] * 6)
    if not isinstance(wts, list) or len(wts) != 6:
        raise ConfigError("'weights' must be a list of 6 numbers")
    try:
        weights = Weights(tuple(_number(w, "weights") for w in wts))
    except ValueError as exc:
        raise ConfigError(f"weights: {exc}") from exc

    if "search" not in data or not isinstance(data["search"], dict):
        raise ConfigError("config requires a 'search' object")
    sea = data["search"]
    _check_keys(
        sea,
        {"center_x_mm", "center_y_mm", "diameters_mm", "diameter_range_mm", "shapes", "catalog"},
        "search",
    )
    for key in ("center_x_mm", "center_y_mm"):
        if key not in sea:
            raise ConfigError(f"search is missing '{key}'")

    catalog = None
    catalog_path = None
    if "catalog" in sea:
        if not isinstance(sea["catalog"], str):
            raise ConfigError("search.catalog must be a file path string")
        catalog_path = sea["catalog"]
        catalog = load_catalog((path.parent / catalog_path).resolve())

    diameter_sources = [k for k in ("diameters_mm", "diameter_range_mm") if k in sea]
    if len(diameter_sources) > 1:
        raise ConfigError("give at most one of search.diameters_mm / search.diameter_range_mm")
    diameters = None
    diameter_range = None
    if "diameters_mm" in sea:
        if not isinstance(sea["diameters_mm"], list) or not sea["diameters_mm"]:
            raise ConfigError("search.diameters_mm must be a non-empty list")
        diameters = tuple(_number(v, "search.diameters_mm") for v in sea["diameters_mm"])
    elif "diameter_range_mm" in sea:
        diameter_range = _triple(sea["diameter_range_mm"], "search.diameter_range_mm")
    elif catalog is not None:
        diameters = tuple(sorted({e.diameter for e in catalog.entries}))
    else:
        raise ConfigError("search needs diameters_mm, diameter_range_mm, or a catalog")

    if "shapes" in sea:
        if not isinstance(sea["shapes"], list) or not sea["shapes"]:
            raise ConfigError("search.shapes must be a non-empty list")
        shapes = tuple(parse_shape(s, "search.shapes") for s in sea["shapes"])
    elif catalog is not None:
        shapes = tuple(sorted({e.shape for e in catalog.entries}))
    else:
        shapes = NEEDLE_SHAPES

    try:
        space = SearchSpace(
            center_x_grid=_triple(sea["center_x_mm"], "search.center_x_mm"),
            center_y_grid=_triple(sea["center_y_mm"], "search.center_y_mm"),
            diameters=diameters,
            diameter_range=diameter_range,
            shapes=shapes,
        )
    except ValueError as exc:
        raise ConfigError(f"search: {exc}") from exc

    gra = data.get("grasp", {})
    if not isinstance(gra, dict):
        raise ConfigError("'grasp' must be an object")
    _check_keys(gra, {"min_margin_rad"}, "grasp")
    try:
        policy = GraspPolicy(min_margin=_number(gra["min_margin_rad"], "grasp.min_margin_rad")) if gra else GraspPolicy()
    except ValueError as exc:
        raise ConfigError(f"grasp: {exc}") from exc

    normalization = data.get("normalization", "minmax")
    if normalization not in NORMALIZATION_MODES:
        raise ConfigError(f"normalization must be one of {NORMALIZATION_MODES}")

    return RunConfig(
        tissue=tissue,
        desired=desired,
        weights=weights,
        space=space,
        policy=policy,
        normalization=normalization,
        catalog=catalog,
        catalog_path=catalog_path,
    )
