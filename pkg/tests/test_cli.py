import io
import json
import random
import subprocess
import sys
from contextlib import redirect_stdout

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from randwords import random_tangle_layers
from sl3web.cli import CACHE_STAMP, main
from sl3web.grammar import parse_word
from sl3web.laurent import LaurentPoly
from sl3web.words import layered_to_word, words_equivalent

THETA = "N- . (I+ * N- * I-) . (I+ * I+ * Y-) . (Y+ * I+) . U+"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_bracket_text(capsys):
    code, out, _ = run(capsys, "bracket", THETA)
    assert code == 0 and out.strip() == "q^3 + 2q + 2q^-1 + q^-3"


def test_catalog_unknot_json(capsys):
    code, doc, _ = run_json(capsys, "catalog", "unknot")
    assert code == 0
    assert doc["command"] == "catalog" and doc["input"] == "unknot" and doc["timings"] == {}
    assert doc["result"]["polynomial"] == {"-2": "1", "0": "1", "2": "1"}


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "trefoil_right:" in out


def test_tangle_methods_agree(capsys):
    _, a, _ = run_json(capsys, "tangle", "X+ . X+")
    _, b, _ = run_json(capsys, "tangle", "X+ . X+", "--method", "statesum")
    assert a["result"] == b["result"]
    assert a["result"]["source"] == "++" and len(a["result"]["terms"]) == 2


def test_check_all_passes(capsys):
    code, doc, _ = run_json(capsys, "check", "all", "--seed", "7")
    assert code == 0 and doc["result"]["passed"]
    assert doc["result"]["confluence"]


def test_open_bracket_is_a_precondition_error(capsys):
    code, out, err = run(capsys, "bracket", "Y+")
    assert code == 2 and out == "" and "NotClosed" in err


def test_parse_and_type_errors(capsys):
    assert run(capsys, "bracket", "Y+ . (")[0] == 1
    assert run(capsys, "tangle", "X+ . U+")[0] == 1
    assert run(capsys, "catalog", "nope")[0] == 1


def test_crossing_cap_flag(capsys):
    code, _, err = run(capsys, "catalog", "trefoil_right", "--method", "statesum", "--max-crossings", "2")
    assert code == 2 and "TooManyCrossings" in err


def test_output_is_byte_deterministic():
    cmd = [sys.executable, "-m", "sl3web", "catalog", "trefoil_right", "--format", "json"]
    outs = {subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1
    poly = LaurentPoly.from_json(json.loads(outs.pop())["result"]["polynomial"])
    assert str(poly) == "-q^14 - q^12 + q^8 + 2q^6 + q^4 + q^2"


def test_timings_only_on_request(capsys):
    _, doc, _ = run_json(capsys, "bracket", THETA, "--timings")
    assert "seconds" in doc["timings"]


def test_cache_roundtrip_and_version_stamp(tmp_path, capsys):
    path = tmp_path / "cache.json"
    _, first, _ = run_json(capsys, "catalog", "hopf_pos", "--cache", str(path))
    data = json.loads(path.read_text())
    assert data["version"] == CACHE_STAMP and len(data["entries"]) == 1
    # a planted entry under the same key is served back verbatim
    (k,) = data["entries"]
    data["entries"][k] = {"planted": True}
    path.write_text(json.dumps(data))
    _, second, _ = run_json(capsys, "catalog", "hopf_pos", "--cache", str(path))
    assert second["result"]["planted"]
    # a stale stamp is ignored
    data["version"] = "other"
    path.write_text(json.dumps(data))
    _, third, _ = run_json(capsys, "catalog", "hopf_pos", "--cache", str(path))
    assert third == first


def test_cache_key_ignores_exchange(tmp_path, capsys):
    path = tmp_path / "cache.json"
    # two circles side by side, drawn with the caps and cups in different orders
    run(capsys, "bracket", "(N+ * N+) . (U+ * U+)", "--cache", str(path))
    run(capsys, "bracket", "(N+ * I0) . (I- * I+ * N+) . (I- * I+ * U+) . U+", "--cache", str(path))
    assert len(json.loads(path.read_text())["entries"]) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_normalize_round_trip(seed):
    rng = random.Random(seed)
    w = layered_to_word(random_tangle_layers(rng, tuple(rng.choice("+-") for _ in range(2)), 6, 3))
    out = normalize_via_main(str(w))
    assert words_equivalent(parse_word(out, "tangle"), w)


def normalize_via_main(text):
    buf = io.StringIO()
    with redirect_stdout(buf):
        assert main(["normalize", text, "--alphabet", "tangle"]) == 0
    return buf.getvalue().strip()


@pytest.mark.parametrize("word", ["(I+ * X+) . (X+ * I+)", "X+ * X-"])
def test_normalize_is_idempotent(capsys, word):
    _, once, _ = run(capsys, "normalize", word)
    _, twice, _ = run(capsys, "normalize", once.strip())
    assert once == twice
