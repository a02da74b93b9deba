"""Shared validators for trajectory datatypes using Pydantic Annotated types."""

import math
from typing import Annotated

from pydantic import AfterValidator


def validate_latitude(v: float) -> float:
    """Validate latitude is a finite angle in [-90, 90] degrees.

    Raises:
        ValueError: If latitude is not finite or out of range.
    """
    if not math.isfinite(v):
        raise ValueError("latitude must be finite")
    if v < -90.0 or v > 90.0:
        raise ValueError("latitude must be between -90 and 90")
    return v


def validate_longitude(v: float) -> float:
    """Validate longitude is a finite angle in [-180, 180] degrees.

    Raises:
        ValueError: If longitude is not finite or out of range.
    """
    if not math.isfinite(v):
        raise ValueError("longitude must be finite")
    if v < -180.0 or v > 180.0:
        raise ValueError("longitude must be between -180 and 180")
    return v


def validate_positive(v: float) -> float:
    """Validate a strictly positive finite number.

    Raises:
        ValueError: If the value is not finite or not greater than zero.
    """
    if not math.isfinite(v) or v <= 0:
        raise ValueError("value must be positive")
    return v


def validate_rate(v: float) -> float:
    """Validate a probability-like rate in [0, 1).

    Raises:
        ValueError: If the rate is outside [0, 1).
    """
    if not 0.0 <= v < 1.0:
        raise ValueError("rate must be in [0, 1)")
    return v


def validate_flight_id(v: str) -> str:
    """Validate a flight identifier (non-empty, no separators).

    Raises:
        ValueError: If the identifier is empty or contains a comma or newline.
    """
    if not v:
        raise ValueError("flight_id cannot be empty")
    if "," in v or "\n" in v:
        raise ValueError("flight_id must not contain commas or newlines")
    return v


# Annotated types for use in Pydantic models
Latitude = Annotated[float, AfterValidator(validate_latitude)]
Longitude = Annotated[float, AfterValidator(validate_longitude)]
PositiveFloat = Annotated[float, AfterValidator(validate_positive)]
Rate = Annotated[float, AfterValidator(validate_rate)]
FlightId = Annotated[str, AfterValidator(validate_flight_id)]
