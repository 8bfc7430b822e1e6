"""Text format helpers."""

from app.utils.ring_format import format_input, format_polynomial, load_input, parse_input

__all__ = ["format_input", "format_polynomial", "load_input", "parse_input"]
