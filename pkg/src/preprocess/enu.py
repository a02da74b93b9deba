"""WGS-84 geodetic to local East-North-Up conversion about an airport frame."""

from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict
from pyproj import Transformer
from pyproj.enums import TransformDirection

from src.errors import PreprocessError
from src.trajectories.models import RawRecord
from src.trajectories.validators import Latitude, Longitude, PositiveFloat


class EnuFrame(BaseModel):
    """Local ENU frame centered at the airport reference point."""

    model_config = ConfigDict(frozen=True)

    ref_lat: Latitude
    ref_lon: Longitude
    ref_alt_m: float = 0.0
    r_max_m: PositiveFloat

    def rotation(self) -> np.ndarray:
        """ECEF-to-ENU rotation matrix (rows are the east, north, up axes)."""
        lat = np.radians(self.ref_lat)
        lon = np.radians(self.ref_lon)
        sin_lat, cos_lat = np.sin(lat), np.cos(lat)
        sin_lon, cos_lon = np.sin(lon), np.cos(lon)
        return np.array([
            [-sin_lon, cos_lon, 0.0],
            [-sin_lat * cos_lon, -sin_lat * sin_lon, cos_lat],
            [cos_lat * cos_lon, cos_lat * sin_lon, sin_lat],
        ])

    def origin_ecef(self) -> np.ndarray:
        """ECEF coordinates of the reference point."""
        x, y, z = _transformer().transform(self.ref_lon, self.ref_lat, self.ref_alt_m)
        return np.array([x, y, z], dtype=np.float64)


@lru_cache(maxsize=1)
def _transformer() -> Transformer:
    """Geodetic (lon, lat, ellipsoidal height) to ECEF, both on WGS-84."""
    return Transformer.from_crs("EPSG:4979", "EPSG:4978", always_xy=True)


def geodetic_to_enu_array(
    lat: np.ndarray,
    lon: np.ndarray,
    alt: np.ndarray,
    frame: EnuFrame,
) -> np.ndarray:
    """Convert arrays of geodetic positions to ENU meters, shape (T, 3).

    Raises:
        PreprocessError: If any latitude or longitude is out of range.
    """
    lat = np.asarray(lat, dtype=np.float64)
    lon = np.asarray(lon, dtype=np.float64)
    alt = np.asarray(alt, dtype=np.float64)
    if np.any(np.abs(lat) > 90.0) or np.any(np.abs(lon) > 180.0):
        raise PreprocessError("latitude/longitude out of range")

    x, y, z = _transformer().transform(lon, lat, alt)
    ecef = np.column_stack([np.atleast_1d(x), np.atleast_1d(y), np.atleast_1d(z)])
    return (ecef - frame.origin_ecef()) @ frame.rotation().T


def geodetic_to_enu(record: RawRecord, frame: EnuFrame) -> np.ndarray:
    """Convert one surveillance record to an ENU position triple in meters."""
    enu = geodetic_to_enu_array(
        np.array([record.latitude]),
        np.array([record.longitude]),
        np.array([record.baro_altitude]),
        frame,
    )
    return enu[0]


def enu_to_geodetic(enu: np.ndarray, frame: EnuFrame) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of ``geodetic_to_enu_array``: returns (lat, lon, alt) arrays."""
    enu = np.atleast_2d(np.asarray(enu, dtype=np.float64))
    ecef = enu @ frame.rotation() + frame.origin_ecef()
    lon, lat, alt = _transformer().transform(
        ecef[:, 0], ecef[:, 1], ecef[:, 2], direction=TransformDirection.INVERSE
    )
    return np.asarray(lat), np.asarray(lon), np.asarray(alt)
