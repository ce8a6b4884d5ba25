import json
import os
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from src.core.errors import EmptySetError, InputValidationError, SegScoreIOError
from src.core.masks import LabelMap, check_same_shape
from src.harness.label_io import load_label_map
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class DatasetEntry:
    """One image: its prediction and K >= 1 ground truths of the same size"""
    image_id: str
    prediction: LabelMap
    ground_truths: Tuple[LabelMap, ...]

    def __post_init__(self):
        object.__setattr__(self, 'ground_truths', tuple(self.ground_truths))
        if not self.ground_truths:
            raise EmptySetError(f"Image '{self.image_id}' has no ground truth")
        for gt in self.ground_truths:
            check_same_shape(self.prediction, gt)


@dataclass(frozen=True)
class Dataset:
    entries: Tuple[DatasetEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, 'entries', tuple(self.entries))
        seen = set()
        for entry in self.entries:
            if entry.image_id in seen:
                raise InputValidationError(f"Duplicate image id in dataset: {entry.image_id}")
            seen.add(entry.image_id)

    @classmethod
    def of(cls, entries: Iterable[DatasetEntry]) -> 'Dataset':
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def image_ids(self) -> List[str]:
        return [entry.image_id for entry in self.entries]


def _resolve(base_dir: str, path: str) -> str:
    return path if os.path.isabs(path) else os.path.normpath(os.path.join(base_dir, path))


def load_manifest(path: str) -> Dataset:
    """
    Loads a dataset manifest: a JSON list of {"id", "pred", "gts": [...]}

    Relative image paths are resolved against the manifest's directory.

    Args:
        path: Path to the manifest file

    Returns:
        Dataset: entries in manifest order
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            records = json.load(f)
    except FileNotFoundError as e:
        raise SegScoreIOError(f"Manifest not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SegScoreIOError(f"Manifest {path} is not valid JSON: {str(e)}") from e
    except OSError as e:
        raise SegScoreIOError(f"Failed to read manifest {path}: {str(e)}") from e

    if not isinstance(records, list):
        raise InputValidationError(f"Manifest {path} must hold a JSON list of entries")

    base_dir = os.path.dirname(os.path.abspath(path))
    entries = []
    for index, record in enumerate(records):
        if not isinstance(record, dict) or 'pred' not in record or 'gts' not in record:
            raise InputValidationError(f"Manifest entry {index} needs 'pred' and 'gts'")
        gts = record['gts']
        if isinstance(gts, str):
            gts = [gts]
        if not isinstance(record['pred'], str):
            raise InputValidationError(f"Manifest entry {index}: 'pred' must be a path string")
        if not isinstance(gts, list) or not all(isinstance(gt, str) for gt in gts):
            raise InputValidationError(f"Manifest entry {index}: 'gts' must be a path or a list of paths")
        entries.append(DatasetEntry(
            image_id=str(record.get('id', index)),
            prediction=load_label_map(_resolve(base_dir, record['pred'])),
            ground_truths=tuple(load_label_map(_resolve(base_dir, gt)) for gt in gts),
        ))

    logger.info("manifest_loaded", path=path, images=len(entries))
    return Dataset.of(entries)
