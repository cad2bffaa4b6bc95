import json
import math

import pytest

import grover_search as gs


def test_instance_and_iterations():
    inst = gs.Instance(4, ["0000"])
    assert inst.n_qubits == 4
    assert inst.dimension == 16
    assert inst.is_marked("0000")
    assert gs.optimal_iterations(4, 1) == 3


def test_simulate_matches_analytic():
    inst = gs.Instance(4, ["0000"])
    dense = gs.simulate(inst)
    entries, default = gs.analytic(inst)
    assert dense["0000"] == pytest.approx(entries["0000"], abs=1e-12)
    assert dense["0000"] == pytest.approx(0.9613189697265625, abs=1e-12)
    assert dense["0110"] == pytest.approx(default, abs=1e-9)
    assert sum(dense.values()) == pytest.approx(1.0, abs=1e-12)


def test_large_n_analytic_path():
    inst = gs.Instance(20, ["0" * 20])
    entries, default = gs.analytic(inst)
    assert len(entries) == 1
    assert entries["0" * 20] > 0.999
    answer = gs.top_k_answer(inst, 30)
    assert len(answer) == 30
    assert answer[0][0] == "0" * 20


def test_answer_formatting():
    assert gs.format_answer([("0000", 0.9596), ("0001", 0.003)]) == \
        "{'0000': 0.9596, '0001': 0.003}"


def test_qasm_round_trip():
    inst = gs.Instance(4, ["0000"])
    flat = gs.emit_qasm(inst, "flat")
    simplified = gs.compress_qasm(flat)
    assert gs.expand_qasm(simplified) == flat
    assert simplified.startswith("h q[0:4]; x q[0:4]; h q[3]; mcx_0 q[0:4];")
    info = gs.parse_qasm(flat, "flat")
    assert info["n_qubits"] == 4
    dist = gs.run_qasm(flat, "flat")
    assert dist["0000"] == pytest.approx(0.9613189697265625, abs=1e-12)


def test_prompt_template():
    inst = gs.Instance(4, ["0000"])
    prompt = gs.build_prompt(inst, "simplified_conversational")
    assert prompt.startswith("Question:\n")
    assert "The input marked status is: 0000 for a 4-qubit system." in prompt
    assert prompt.endswith("The answer is:\n")


def test_metrics():
    inst = gs.Instance(4, ["0000"])
    entries, default = gs.analytic(inst)
    assert gs.search_accuracy({"0000": 0.9}, 4, entries, default, ["0000"]) == 1.0
    assert gs.infidelity(dict(entries), 4, entries, default) > 0.0
    assert gs.marked_infidelity({"0000": 0.5}, 4, entries, default, ["0000"]) == \
        pytest.approx(0.2128151918295771, abs=1e-12)
    parsed = gs.parse_model_answer("The answer is {'0000': 0.96}", 4)
    assert parsed["status"] == "ok"
    assert parsed["parsed"]["0000"] == 0.96


def test_corpus_and_evaluate(tmp_path):
    config = {
        "min_qubits": 3,
        "max_qubits": 5,
        "total_records": 9,
        "master_seed": 7,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    corpus_path = tmp_path / "corpus.jsonl"
    stats = gs.generate_corpus_file(str(corpus_path), str(config_path))
    assert stats["records"] == 9

    predictions_path = tmp_path / "preds.jsonl"
    with corpus_path.open() as corpus, predictions_path.open("w") as preds:
        for line in corpus:
            record = json.loads(line)
            preds.write(json.dumps({
                "id": record["id"],
                "model_tag": "self",
                "raw_reply": record["answer"],
            }) + "\n")
    result = gs.evaluate(str(corpus_path), str(predictions_path))
    assert result["total"] == 9
    assert result["parse_failures"] == 0
    for group in result["groups"]:
        assert group["alpha_mean"] == 1.0
        assert group["eps_mean"] < 1e-6


def test_uniform_baseline():
    inst = gs.Instance(2, ["11"])
    base = gs.uniform_baseline(inst, 30)
    assert base == {k: 0.25 for k in ("00", "01", "10", "11")}
