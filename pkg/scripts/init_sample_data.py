#!/usr/bin/env python3
"""Regenerate the sample ring files under app/data/samples."""

import argparse
import sys
import os
from pathlib import Path

# Add the parent directory to the path so we can import our modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app.config import DATA_DIR
from app.models.ring import CoefficientField, IdealPresentation
from app.services.stillman_service import (
    burch_kohn_family,
    halfplane_ring,
    hirzebruch_cox_ring,
    mccullough_family,
    three_cubics_ideal,
)
from app.utils.ring_format import format_input


def _halfplane_example() -> IdealPresentation:
    ring = halfplane_ring(3, field=CoefficientField.rationals())
    x1, x2, x3, y1, y2, y3 = ring.gens()
    return IdealPresentation(ring, (x1 * y1 - x2 * y2, x3 * y3))


def build_samples():
    """File name -> (header comment, ring, ideal)."""
    hirzebruch = hirzebruch_cox_ring()
    cubics = three_cubics_ideal()
    mccullough = mccullough_family(2)
    burch_kohn = burch_kohn_family(2)
    non_connected = mccullough_family(2, connected=False)
    halfplane = _halfplane_example()
    return {
        "hirzebruch.ring": ("Cox ring of the Hirzebruch surface F_2.", hirzebruch, None),
        "three_cubics.ring": (
            "Three cubics in 18 variables; pdim 3 against a Hilbert bound of 18.", cubics.ring, cubics
        ),
        "mccullough_2.ring": (None, mccullough.ring, mccullough),
        "burch_kohn_2.ring": (None, burch_kohn.ring, burch_kohn),
        "non_connected.ring": (
            "x and y sit in degree 0: no Stillman bound exists for this grading.",
            non_connected.ring,
            non_connected,
        ),
        "halfplane_3.ring": ("Support is the open upper half-plane plus the origin.", halfplane.ring, halfplane),
    }


def write_samples(target: Path) -> None:
    target.mkdir(parents=True, exist_ok=True)
    for name, (comment, ring, ideal) in build_samples().items():
        text = format_input(ring, ideal)
        if comment:
            text = f"# {comment}\n{text}"
        (target / name).write_text(text, encoding="utf-8")
        print(f"✓ wrote {target / name}")


def main():
    parser = argparse.ArgumentParser(description="Regenerate the sample ring files")
    parser.add_argument(
        "--target",
        default=str(DATA_DIR / "samples"),
        help="Output directory (default: app/data/samples)",
    )
    args = parser.parse_args()
    write_samples(Path(args.target))


if __name__ == "__main__":
    main()
