"""Bundled fixture datasets with provenance notes.

glass_fibre
    Breaking strengths of 63 glass fibres of length 1.5 cm, first published
    by Smith and Naylor (1987, Applied Statistics 36, 358-369) and since
    used by many authors of skew distributions.  Left-skewed.  This
    transcription reproduces the published maximum-likelihood values of
    standard four-parameter fits to four decimal places, which pins it to
    the canonical print version.

athlete_heights
    Heights in centimetres of 100 female athletes from the Australian
    Institute of Sport survey (Telford and Cunningham, 1991; printed in
    Cook and Weisberg, 1994, An Introduction to Regression Graphics).
    CAUTION: no
    verifiable copy of the source table was available when this fixture
    was transcribed; the first 13 values (basketball players) were
    validated against the published body-mass-index cross-checks, the
    remainder are an unverified reconstruction.  Summary statistics are
    close to, but likelihood values do not exactly reproduce, published
    fits of the original data.  Replace this file with a verified
    transcription to reproduce published results exactly.
"""

from importlib import resources

import numpy as np

__all__ = ["glass_fibre", "athlete_heights", "fixture_path", "CATALOG"]


def _load(name):
    ref = resources.files("gatdist").joinpath("data").joinpath(name)
    with ref.open("r", encoding="utf-8") as fh:
        return np.array([float(line) for line in fh if line.strip()])


def glass_fibre():
    """63 glass-fibre breaking strengths (Smith and Naylor, 1987)."""
    return _load("glass_fibre.txt")


def athlete_heights():
    """100 female athlete heights in cm (AIS survey; see module docstring)."""
    return _load("athlete_heights.txt")


def fixture_path(name):
    """Filesystem path of a bundled fixture (for CLI use)."""
    if name not in CATALOG:
        raise KeyError(f"unknown fixture {name!r}; have {sorted(CATALOG)}")
    return str(resources.files("gatdist").joinpath("data").joinpath(
        f"{name}.txt"))


CATALOG = {"glass_fibre": glass_fibre, "athlete_heights": athlete_heights}
