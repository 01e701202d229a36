import json
import math

from freeconv.cli import main

BERNOULLI = {"type": "atoms", "atoms": [["-1", "1/2"], ["1", "1/2"]]}
DELTA0 = {"type": "atoms", "atoms": [["0", "1"]]}
WIGNER01 = {
    "type": "jacobi",
    "alpha": [],
    "omega": [],
    "tail": {"kind": "wigner", "a": "0", "b": "1"},
}
P2 = {"vertices": 2, "root": 0, "edges": [[0, 1]]}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConvolve:
    def test_free_of_two_point_pair(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", BERNOULLI)
        nu = write(tmp_path, "nu.json", BERNOULLI)
        code, out, _ = run(capsys, ["convolve", "free", mu, nu, "--order", "6"])
        assert code == 0
        obj = json.loads(out)
        assert obj["m"] == ["0", "2", "0", "6", "0", "20"]

    def test_sfree_of_constant_tail_doubles_coefficients(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", WIGNER01)
        code, out, _ = run(capsys, ["convolve", "sfree", mu, mu, "--order", "10"])
        assert code == 0
        obj = json.loads(out)
        assert obj["jacobi"]["alpha"] == ["0", "0", "0", "0", "0"]
        assert obj["jacobi"]["omega"] == ["1", "2", "2", "2"]

    def test_orthogonal_right_identity_is_byte_exact(self, tmp_path, capsys):
        mu_obj = {"type": "moments", "m": ["1/2", "3/4", "-2", "5", "0", "1/3"]}
        mu = write(tmp_path, "mu.json", mu_obj)
        nu = write(tmp_path, "nu.json", DELTA0)
        code, out, _ = run(capsys, ["convolve", "orthogonal", mu, nu, "--order", "6"])
        assert code == 0
        assert json.loads(out)["m"] == mu_obj["m"]

    def test_output_round_trips_through_parser(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", BERNOULLI)
        code, out, _ = run(capsys, ["convolve", "boolean", mu, mu, "--order", "6"])
        assert code == 0
        first = json.loads(out)
        back = write(tmp_path, "back.json", first)
        code, out2, _ = run(capsys, ["convolve", "orthogonal", back, write(tmp_path, "d0.json", DELTA0), "--order", "6"])
        assert code == 0
        assert json.loads(out2)["m"] == first["m"]

    def test_iterated_orthogonal(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", BERNOULLI)
        code, out, _ = run(
            capsys,
            ["convolve", "orthogonal-iter", mu, mu, "--order", "6", "--iterations", "4"],
        )
        assert code == 0
        # stabilized to the subordinate half by this depth
        assert json.loads(out)["m"] == ["0", "1", "0", "2", "0", "5"]

    def test_table_output(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", BERNOULLI)
        code, out, _ = run(
            capsys, ["convolve", "boolean", mu, mu, "--order", "4", "--output", "table"]
        )
        assert code == 0
        assert "m[2] = 2" in out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        nu = write(tmp_path, "nu.json", DELTA0)
        code, _, err = run(capsys, ["convolve", "free", str(bad), nu])
        assert code == 2 and "error" in err

    def test_unknown_measure_type_exit_code(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", {"type": "gaussian"})
        nu = write(tmp_path, "nu.json", DELTA0)
        code, _, _ = run(capsys, ["convolve", "free", mu, nu])
        assert code == 2


class TestDensity:
    def test_semicircle_grid(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", WIGNER01)
        code, out, _ = run(
            capsys,
            ["density", mu, "--xmin", "-3", "--xmax", "3", "--points", "601"],
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,f"
        assert len(lines) == 602
        worst = 0.0
        for line in lines[1:]:
            x, f = (float(v) for v in line.split(","))
            want = math.sqrt(max(4 - x * x, 0.0)) / (2 * math.pi)
            worst = max(worst, abs(f - want))
        assert worst <= 1e-3

    def test_not_a_moment_sequence_exit_code(self, tmp_path, capsys):
        mu = write(tmp_path, "mu.json", {"type": "moments", "m": ["0", "-1"]})
        code, _, _ = run(capsys, ["density", mu, "--points", "3"])
        assert code == 3


class TestGraph:
    def test_star_of_two_edges(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", P2)
        code, out, _ = run(capsys, ["graph", "star", g, g, "--moments", "4"])
        assert code == 0
        obj = json.loads(out)
        assert obj["graph"]["vertices"] == 3
        assert obj["moments"] == ["0", "2", "0", "4"]

    def test_free_ball_arcsine(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", P2)
        code, out, _ = run(
            capsys, ["graph", "free-ball", g, g, "--radius", "6", "--moments", "6"]
        )
        assert code == 0
        assert json.loads(out)["moments"] == ["0", "2", "0", "6", "0", "20"]

    def test_orthogonal_matches_convolution_command(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", P2)
        code, out, _ = run(capsys, ["graph", "orthogonal", g, g, "--moments", "6"])
        assert code == 0
        graph_moments = json.loads(out)["moments"]
        mu = write(tmp_path, "mu.json", BERNOULLI)
        code, out2, _ = run(capsys, ["convolve", "orthogonal", mu, mu, "--order", "6"])
        assert code == 0
        assert json.loads(out2)["m"] == graph_moments

    def test_bad_graph_exit_code(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", {"vertices": 2, "root": 9, "edges": []})
        code, _, _ = run(capsys, ["graph", "star", g, g])
        assert code == 2


class TestVerify:
    def test_partition_suite_passes(self, capsys):
        code, out, _ = run(capsys, ["verify", "--suite", "partitions", "--n-max", "7"])
        assert code == 0
        assert "FAIL" not in out
        assert "checks passed" in out
