import json
import random
from dataclasses import replace
from pathlib import Path

import pytest

from permpoly import mu as mu_module
from permpoly.errors import ConfigError, InvalidArgument, RecordParseError, ResourceLimit
from permpoly.gf import make_field
from permpoly.mu import is_permutation_bruteforce
from permpoly.poly import Polynomial, compose_power, parse_poly, reduce_mod_field
from permpoly.search import (
    FINDING_KEYS, SearchConfig, SearchStats, canonicalize, multiplier_tuples, read_findings,
    run_search, summarize,
)
from permpoly.mu import field_form

DEMO = Path(__file__).resolve().parents[1] / "demos" / "demo_search.yaml"


def small_config(tmp_path, **overrides):
    base = dict(k=(2,), ell=(2,), variants=(1,), branches=("cor3.1",), max_m=1, max_s=2,
                max_t=1, threshold=6, output=str(tmp_path / "out.jsonl"))
    base.update(overrides)
    return SearchConfig(**base)


def test_canonicalize_examples(F4, F16):
    for c in range(1, 16):
        assert canonicalize(Polynomial(F16, {1: c})) == Polynomial(F16, {1: 1})
    f = Polynomial(F16, {9: 1, 2: 7})
    assert canonicalize(f) == f
    # w (X^3 + w X) = w X^3 + (w+1) X; dividing by w gives X^3 + w X
    g = Polynomial(F4, {3: 2, 1: 3})
    assert canonicalize(g) == Polynomial(F4, {3: 1, 1: 2})
    with pytest.raises(InvalidArgument):
        canonicalize(Polynomial.zero(F4))


def test_canonical_dedup_soundness():
    rnd = random.Random(5)
    for p, k in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        F = make_field(p, 2 * k)
        for _ in range(100):
            f = Polynomial(F, {rnd.randrange(3 * F.size): rnd.randrange(1, F.size)
                               for _ in range(3)})
            if not reduce_mod_field(f):
                continue
            c = rnd.randrange(1, F.size)
            g = f.scaled(c)
            assert canonicalize(f) == canonicalize(g)
            assert is_permutation_bruteforce(f) == is_permutation_bruteforce(g)


def test_multiplier_tuples_order():
    tuples = multiplier_tuples(2, 2, 2)
    assert tuples[0] == ()
    pairs = [[(sp.s, sp.t) for sp in tup] for tup in tuples]
    assert pairs == sorted(pairs)
    assert len(tuples) == 1 + 4 + 10


def test_search_contains_known_instance(tmp_path):
    config = small_config(tmp_path)
    found = list(run_search(config))
    hit = [fd for fd in found if fd.B == "1*X^7 + 1*X^6 + 1*X^5 + 1*X^3 + 1"]
    assert len(hit) == 1
    assert hit[0].r == 2 and hit[0].verified and hit[0].terms_B == 5
    lines = Path(config.output).read_text().splitlines()
    assert [json.loads(line) for line in lines] == [json.loads(fd.to_json()) for fd in found]
    for line in lines:
        assert set(json.loads(line)) == FINDING_KEYS


def test_threshold_zero_gives_nothing(tmp_path):
    stats = SearchStats()
    found = list(run_search(small_config(tmp_path, threshold=0), stats))
    assert found == []
    assert stats.candidates > 0 and stats.tuples_examined > 0
    assert Path(tmp_path / "out.jsonl").read_text() == ""


def test_search_is_deterministic(tmp_path):
    config = SearchConfig.from_file(DEMO)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    list(run_search(config, output=a))
    list(run_search(config, output=b))
    assert a.read_bytes() == b.read_bytes() and a.read_bytes()


def test_parallel_matches_serial(tmp_path):
    config = SearchConfig.from_file(DEMO)
    a, b = tmp_path / "serial.jsonl", tmp_path / "parallel.jsonl"
    list(run_search(config, output=a))
    list(run_search(replace(config, workers=2), output=b))
    assert a.read_bytes() == b.read_bytes()


def test_threshold_monotone(tmp_path):
    config = SearchConfig.from_file(DEMO)
    previous = set()
    for threshold in range(0, 8):
        found = run_search(replace(config, threshold=threshold), output=tmp_path / "m.jsonl")
        current = {(fd.q, fd.f) for fd in found}
        assert previous <= current
        previous = current


def test_findings_satisfy_record_invariants(tmp_path):
    config = small_config(tmp_path, k=(2, 3), ell=(1, 2, 3), variants=(1, 2),
                          branches=("cor3.1", "cor3.2"), max_s=4, max_t=3,
                          compose_e=(11,), r_policy="all-below:40", threshold=20)
    found = list(run_search(config))
    assert any(fd.e == 11 for fd in found) and any(fd.e is None for fd in found)
    for fd in found:
        F = make_field(fd.p, 2 * fd.k)
        B, f = parse_poly(fd.B, F), parse_poly(fd.f, F)
        expected = field_form(fd.r, B)
        if fd.e is not None:
            expected = compose_power(expected, fd.e)
        assert f == expected == reduce_mod_field(f)
        assert fd.verified and is_permutation_bruteforce(f)
        assert fd.r < 40


def test_search_resource_limit(tmp_path, monkeypatch):
    monkeypatch.setattr(mu_module, "SCAN_CAP", 100)
    with pytest.raises(ResourceLimit, match="256"):
        list(run_search(small_config(tmp_path, k=(4,))))
    # without verification the cap does not apply
    list(run_search(small_config(tmp_path, k=(4,), verify=False)))


def test_compose_exponent_must_be_coprime(tmp_path):
    with pytest.raises(ConfigError, match="compose_e"):
        list(run_search(small_config(tmp_path, k=(3,), compose_e=(7,))))


def test_unwritable_output(tmp_path):
    config = small_config(tmp_path, output=str(tmp_path / "missing" / "out.jsonl"))
    with pytest.raises(OSError):
        list(run_search(config))


def test_config_from_file(tmp_path):
    config = SearchConfig.from_file(DEMO)
    assert config.k == (2, 4) and config.ell == (1, 2, 3, 4)
    assert config.max_s == 3 and config.max_t == 4 and config.verify


@pytest.mark.parametrize("data, fragment", [
    ({"k": [2], "ell": [1], "max_t": 0}, "max_t"),
    ({"k": [2], "ell": [1], "colour": 1}, "unknown key 'colour'"),
    ({"ell": [1]}, "missing required key 'k'"),
    ({"k": [], "ell": [1]}, "k must be"),
    ({"k": [2], "ell": [1], "variants": [3]}, "variants"),
    ({"k": [2], "ell": [1], "branches": ["cor5.1"]}, "branches"),
    ({"k": [2], "ell": [1], "r_policy": "largest"}, "r_policy"),
    ({"k": [2], "ell": [1], "compose_e": [3]}, "compose_e value 3"),
    ({"k": [2], "ell": [1], "verify": "yes"}, "verify"),
])
def test_config_validation(data, fragment):
    with pytest.raises(ConfigError) as info:
        SearchConfig.from_mapping(data)
    assert fragment in str(info.value)


def test_config_reports_every_problem():
    with pytest.raises(ConfigError) as info:
        SearchConfig.from_mapping({"k": [2], "ell": [0], "max_t": 0, "max_s": -1, "bogus": 1})
    assert len(info.value.problems) == 4


def test_summarize_empty(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    report = summarize(path)
    assert report.total == 0 and not report.counts
    assert "findings: 0" in report.render()


def test_summarize_single(tmp_path):
    config = small_config(tmp_path)
    first = next(iter(run_search(config)))
    path = tmp_path / "one.jsonl"
    path.write_text(first.to_json() + "\n")
    report = summarize(path)
    assert report.total == 1
    assert report.counts == {(4, "cor3.1", first.terms_f): 1}
    rows = [line for line in report.render().splitlines() if line.startswith("4 ")]
    assert len(rows) == 2 and str(first.terms_f) in rows[0]


def test_summarize_demo_minimum(tmp_path):
    path = tmp_path / "demo.jsonl"
    list(run_search(SearchConfig.from_file(DEMO), output=path))
    report = summarize(path)
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert report.total == len(records)
    for q in {r["q"] for r in records}:
        assert report.minima[q].terms_f == min(r["terms_f"] for r in records if r["q"] == q)


def test_summarize_bad_record(tmp_path):
    path = tmp_path / "bad.jsonl"
    config = small_config(tmp_path)
    good = next(iter(run_search(config))).to_json()
    path.write_text(good + "\n" + good + "\n{not json\n")
    with pytest.raises(RecordParseError) as info:
        read_findings(path)
    assert info.value.lineno == 3
    path.write_text(json.dumps({"p": 2}) + "\n")
    with pytest.raises(RecordParseError, match="line 1"):
        summarize(path)
