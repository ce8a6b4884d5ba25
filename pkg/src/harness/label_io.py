import os
import re
from typing import Optional, Tuple

import numpy as np
from PIL import Image, UnidentifiedImageError

from config import FILE_CONFIG
from src.core.errors import SegScoreIOError, UnsupportedFormatError, InvalidLabelMapError
from src.core.masks import LabelMap
from src.utils.logging_utils import get_logger

logger = get_logger(__name__)


def resolve_format(path: str, fmt: Optional[str] = None) -> str:
    """Returns 'png' or 'pgm' from an explicit format or the file extension"""
    if fmt:
        fmt = fmt.lower()
        if fmt not in FILE_CONFIG['pillow_formats']:
            raise UnsupportedFormatError(f"Unsupported label map format: {fmt}")
        return fmt
    ext = os.path.splitext(path)[1].lower()
    try:
        return FILE_CONFIG['supported_extensions'][ext]
    except KeyError:
        raise UnsupportedFormatError(
            f"Unsupported label map extension '{ext}' for {path}; use .png or .pgm"
        ) from None


PGM_MAGICS = (b'P5', b'P2')


def _pgm_header(data: bytes, path: str) -> Tuple[bytes, int, int, int, int]:
    """(magic, width, height, maxval, offset of the first sample) of a PGM file"""
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and (data[pos:pos + 1].isspace() or data[pos:pos + 1] == b'#'):
            if data[pos:pos + 1] == b'#':
                end = data.find(b'\n', pos)
                pos = len(data) if end < 0 else end + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b'#':
            pos += 1
        if start == pos:
            raise SegScoreIOError(f"Truncated PGM header in {path}")
        fields.append(data[start:pos])

    try:
        width, height, maxval = (int(value) for value in fields[1:])
    except ValueError:
        raise SegScoreIOError(f"Malformed PGM header in {path}") from None
    if width < 1 or height < 1:
        raise SegScoreIOError(f"PGM {path} has no pixels")
    # a single whitespace byte separates maxval from the raster
    return fields[0], width, height, maxval, pos + 1


def _read_pgm(data: bytes, path: str) -> np.ndarray:
    """
    Decodes a P5 or P2 PGM without rescaling

    Sample values are label ids whatever the header's maxval is.
    """
    magic, width, height, maxval, offset = _pgm_header(data, path)
    if not 1 <= maxval <= FILE_CONFIG['max_label']:
        raise UnsupportedFormatError(
            f"unsupported PGM maxval {maxval} in {path}: "
            f"pre-quantize to an 8-bit single-channel label image"
        )

    count = width * height
    if magic == b'P5':
        if len(data) - offset < count:
            raise SegScoreIOError(f"Truncated PGM raster in {path}")
        samples = np.frombuffer(data, dtype=np.uint8, count=count, offset=offset)
    else:
        tokens = re.sub(rb'#[^\n]*', b'', data[offset - 1:]).split()
        if len(tokens) < count:
            raise SegScoreIOError(f"Truncated PGM raster in {path}")
        try:
            samples = np.array([int(token) for token in tokens[:count]], dtype=np.int64)
        except ValueError:
            raise SegScoreIOError(f"Malformed PGM raster in {path}") from None

    if samples.max() > maxval:
        raise InvalidLabelMapError(f"PGM {path} holds samples above its maxval {maxval}")
    return samples.reshape(height, width)


def _read_with_pillow(path: str, expected: str) -> np.ndarray:
    try:
        with Image.open(path) as image:
            image.load()
            mode = image.mode
            actual = (image.format or '').upper()
            if mode not in ('L', '1'):
                raise UnsupportedFormatError(
                    f"unsupported pixel format '{mode}' in {path}: "
                    f"pre-quantize to an 8-bit single-channel label image"
                )
            labels = np.array(image, dtype=np.uint8 if mode == 'L' else bool)
    except UnidentifiedImageError as e:
        raise SegScoreIOError(f"Cannot decode image {path}: {str(e)}") from e
    except OSError as e:
        raise SegScoreIOError(f"Failed to read {path}: {str(e)}") from e

    if actual and actual != FILE_CONFIG['pillow_formats'][expected]:
        logger.warning("label_map_format_mismatch", path=path, expected=expected, actual=actual)
    return labels


def load_label_map(path: str, fmt: Optional[str] = None) -> LabelMap:
    """
    Loads an 8-bit single-channel PNG or PGM whose pixel values are label ids

    PGM rasters are read as stored; a maxval below 255 does not rescale the labels.

    Args:
        path: Path to the image
        fmt: 'png' or 'pgm'; inferred from the extension when omitted

    Returns:
        LabelMap: labels with the image's dimensions
    """
    expected = resolve_format(path, fmt)
    if not os.path.exists(path):
        raise SegScoreIOError(f"File not found: {path}")

    try:
        with open(path, 'rb') as f:
            data = f.read()
    except OSError as e:
        raise SegScoreIOError(f"Failed to read {path}: {str(e)}") from e

    if data[:2] in PGM_MAGICS:
        if expected != 'pgm':
            logger.warning("label_map_format_mismatch", path=path, expected=expected, actual='PGM')
        labels = _read_pgm(data, path)
    else:
        labels = _read_with_pillow(path, expected)

    logger.debug("label_map_loaded", path=path, width=labels.shape[1], height=labels.shape[0])
    return LabelMap(labels.astype(np.int64))


def save_label_map(label_map: LabelMap, path: str, fmt: Optional[str] = None) -> str:
    """
    Writes a label map as an 8-bit single-channel PNG or PGM

    Returns:
        str: The written path
    """
    fmt = resolve_format(path, fmt)
    if label_map.labels.max() > FILE_CONFIG['max_label']:
        raise InvalidLabelMapError(
            f"Labels above {FILE_CONFIG['max_label']} cannot be stored in an 8-bit image"
        )
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        # a 2-D uint8 array maps to mode 'L'
        Image.fromarray(label_map.labels.astype(np.uint8)).save(
            path, format=FILE_CONFIG['pillow_formats'][fmt]
        )
    except OSError as e:
        raise SegScoreIOError(f"Failed to write {path}: {str(e)}") from e

    logger.debug("label_map_saved", path=path, format=fmt)
    return path
