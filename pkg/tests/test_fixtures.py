"""The committed search-found fixtures stay valid.

These files realise objects the theory asserts exist but gives no
formula for; they were produced by `bilrank search` with the seeds
recorded in their declared sections and live in the repo for CI.
"""

import glob
import os

from bilrank import fileio
from bilrank import formcore as fc
from bilrank import spanspace as sp
from bilrank.cli import main as cli_main

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def test_all_repo_fixtures_verify_clean():
    paths = sorted(glob.glob(os.path.join(FIXTURE_DIR, "*.json")))
    assert paths, "fixtures directory must not be empty"
    for path in paths:
        assert cli_main(["verify", path]) == 0, path


def test_rank2_distinct_radical_fixture_properties():
    # constant rank 2 symmetric subspace of dimension n-1 = 2 over GF(3)
    # in which independent elements have different radicals
    path = os.path.join(FIXTURE_DIR, "symm-rank2-distinct-radicals-q3-n3.json")
    loaded = fileio.read_subspace(path)
    M = loaded.subspace
    assert M.kind == "symmetric" and M.dim == 2 and M.n == 3
    assert sp.rank_spectrum(M).ranks == (2,)
    rads = {fc.right_radical(f).key() for _, f in sp.enumerate_nonzero(M)}
    assert len(rads) == (3**2 - 1) // (3 - 1) == 4  # one per projective line
    assert loaded.declared["params"]["seed"] == 11


def test_alt_spectrum_fixture_is_full_alternating_space():
    path = os.path.join(FIXTURE_DIR, "alt-spectrum-q3-n3-s1.json")
    loaded = fileio.read_subspace(path)
    M = loaded.subspace
    assert M.kind == "alternating" and M.dim == 3
    assert sp.rank_spectrum(M).ranks == (2,)
