import json

import pytest

from graphnorm import cli


def run(tmp_path, args, data=None):
    argv = list(args)
    if data is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(data))
        argv += ["-i", str(path)]
    out = tmp_path / "out"
    argv += ["-o", str(out)]
    code = cli.main(argv)
    return code, out.read_text() if out.exists() else ""


XYZ_NORM = {
    "dim": 3,
    "functionals": [
        {"weight": "1", "beta": ["1", "0", "0"]},
        {"weight": "1", "beta": ["0", "1", "0"]},
        {"weight": "1", "beta": ["0", "0", "1"]},
    ],
}

ROUNDTRIP_GRAPH = {
    "vertices": [
        {"genus": 0, "euler_number": "1",
         "surgeries": [[1, -1], [2, 1], [2, -1], [2, 1], [2, -1]]},
        {"genus": 0, "euler_number": "1",
         "surgeries": [[1, -1], [2, 1], [2, -1], [2, 1], [2, -1]]},
    ],
    "edges": [{"u": 0, "v": 1, "p": -1}],
}


class TestBall:
    def test_octahedron(self, tmp_path):
        code, out = run(tmp_path, ["ball"], XYZ_NORM)
        assert code == 0
        obj = json.loads(out)
        assert obj["dim"] == 3
        assert ["1", "0", "0"] in obj["vertices"]
        assert len(obj["vertices"]) == 6

    def test_verify_equal(self, tmp_path):
        code, out = run(tmp_path, ["ball", "--verify-equal"], XYZ_NORM)
        assert code == 0
        assert json.loads(out)["equal"] is True

    def test_oracle_matches(self, tmp_path):
        c1, o1 = run(tmp_path, ["ball"], XYZ_NORM)
        c2, o2 = run(tmp_path, ["ball", "--oracle"], XYZ_NORM)
        assert (c1, c2) == (0, 0)
        assert o1 == o2

    def test_off_format(self, tmp_path):
        code, out = run(tmp_path, ["ball", "--format", "off"], XYZ_NORM)
        assert code == 0
        assert out.startswith("OFF")

    def test_resource_limit(self, tmp_path):
        nrm = {"dim": 1,
               "functionals": [{"weight": "1", "beta": ["1"]}] * 3}
        code, _ = run(tmp_path, ["ball", "--oracle", "--max-k", "2"], nrm)
        assert code == 3

    def test_determinism(self, tmp_path):
        _, a = run(tmp_path, ["ball"], XYZ_NORM)
        _, b = run(tmp_path, ["ball"], XYZ_NORM)
        assert a == b


class TestGraphCommands:
    def test_check(self, tmp_path):
        code, out = run(tmp_path, ["check"], ROUNDTRIP_GRAPH)
        assert code == 0
        rep = json.loads(out)
        assert rep == {"b1_gamma": 0, "null_space_dim": 0, "kernel_dim": 1,
                       "b2": 1, "fibered": True}

    def test_matrix(self, tmp_path):
        code, out = run(tmp_path, ["matrix"], ROUNDTRIP_GRAPH)
        assert code == 0
        assert json.loads(out)["matrix"] == [["1", "-1"], ["-1", "1"]]

    def test_matrix_csv(self, tmp_path):
        code, out = run(tmp_path, ["matrix", "--format", "csv"],
                        ROUNDTRIP_GRAPH)
        assert code == 0
        assert out == "1,-1\n-1,1\n"

    def test_kernel_of_graph(self, tmp_path):
        code, out = run(tmp_path, ["kernel"], ROUNDTRIP_GRAPH)
        assert code == 0
        assert json.loads(out)["kernel"] == [["1", "1"]]

    def test_kernel_of_matrix(self, tmp_path):
        code, out = run(tmp_path, ["kernel"],
                        {"matrix": [["1", "-1"], ["-1", "1"]]})
        assert code == 0
        assert json.loads(out)["kernel"] == [["1", "1"]]

    def test_norm_eval(self, tmp_path):
        code, out = run(tmp_path, ["norm-eval"],
                        {"graph": ROUNDTRIP_GRAPH, "tuple": ["1", "1"]})
        assert code == 0
        assert json.loads(out) == {"realizable": True, "value": "2"}

    def test_norm_eval_infeasible(self, tmp_path):
        code, out = run(tmp_path, ["norm-eval"],
                        {"graph": ROUNDTRIP_GRAPH, "tuple": ["1", "0"]})
        assert code == 1
        assert json.loads(out) == {"realizable": False}

    def test_invalid_graph(self, tmp_path):
        bad = {"vertices": [{"genus": 0, "euler_number": "0",
                             "surgeries": []}], "edges": []}
        code, _ = run(tmp_path, ["check"], bad)
        assert code == 2


class TestRealize:
    def test_nonfibered(self, tmp_path):
        code, out = run(tmp_path, ["realize", "--fibered", "false"],
                        {"betas": [["1"], ["1"]], "genera": [0, 0]})
        assert code == 0
        obj = json.loads(out)
        assert obj["verified"] is True
        assert len(obj["graph"]["vertices"]) == 3

    def test_genera_flag(self, tmp_path):
        code, out = run(tmp_path, ["realize", "--genera", "1,2"],
                        {"betas": [["1"], ["1"]]})
        assert code == 0
        obj = json.loads(out)
        assert [v["genus"] for v in obj["graph"]["vertices"]] == [1, 2]

    def test_not_a_norm(self, tmp_path):
        code, _ = run(tmp_path, ["realize"],
                      {"betas": [["1", "0"], ["2", "0"]]})
        assert code == 2

    def test_emitted_graph_revalidates(self, tmp_path):
        _, out = run(tmp_path, ["realize"],
                     {"betas": [["1", "0"], ["0", "1"], ["1", "1"]]})
        graph = json.loads(out)["graph"]
        code, rep = run(tmp_path, ["check"], graph)
        assert code == 0
        assert json.loads(rep)["fibered"] is True


class TestPolytopeCommands:
    OCTA = {"dim": 3, "vertices": [
        ["1", "0", "0"], ["-1", "0", "0"], ["0", "1", "0"],
        ["0", "-1", "0"], ["0", "0", "1"], ["0", "0", "-1"]]}

    def test_weights(self, tmp_path):
        code, out = run(tmp_path, ["weights"], self.OCTA)
        assert code == 0
        obj = json.loads(out)
        assert obj["feasible"] is True
        assert all(w["weight"] == "1" for w in obj["weights"])

    def test_weights_infeasible(self, tmp_path):
        cube = {"dim": 3, "vertices": [
            [str(a), str(b), str(c)]
            for a in (1, -1) for b in (1, -1) for c in (1, -1)]}
        code, out = run(tmp_path, ["weights"], cube)
        assert code == 1
        assert json.loads(out) == {"feasible": False}

    def test_complete(self, tmp_path):
        code, out = run(tmp_path, ["complete"], self.OCTA)
        assert code == 0
        obj = json.loads(out)
        assert obj["refines"] is True
        assert len(obj["norm"]["functionals"]) == 3

    def test_malformed_rational(self, tmp_path):
        bad = {"dim": 1, "vertices": [["1/0"], ["-1"]]}
        code, _ = run(tmp_path, ["weights"], bad)
        assert code == 2


class TestVerify:
    def test_seeded_suite(self, tmp_path, capsys):
        code = cli.main(["verify", "--seed", "0"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.count("PASS") == 4 and "FAIL" not in out


def test_json_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert cli.main(["ball", "-i", str(path)]) == 2


def test_missing_input_file(tmp_path):
    assert cli.main(["ball", "-i", str(tmp_path / "nope.json")]) == 2
