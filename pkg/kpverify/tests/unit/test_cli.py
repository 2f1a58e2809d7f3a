"""
Unit tests for the command line and the KPVerify facade (cli.py, main.py).
"""

import json

import pytest
from sympy.polys.domains import QQ

from kpverify.cli import EXIT_PASS, EXIT_USAGE, build_parser, config_from_args, main
from kpverify.main import KPVerify
from kpverify.utils.errors import ConfigurationError, ValidationError


@pytest.mark.unit
class TestArguments:
    """Test flag parsing into Config."""

    def test_lambda_infers_matrix_size(self, clean_env):
        args = build_parser().parse_args(["verify", "lemma1", "--lambda", "1, 3/2"])

        config = config_from_args(args)

        assert config.matrix_dim == 2
        assert config.eigenvalues == ["1", "3/2"]

    def test_flags_override_file(self, clean_env, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("depth: 5\nseed: 9\n", encoding="utf-8")
        args = build_parser().parse_args(["verify", "lemma1", "--config", str(path), "--depth", "2"])

        config = config_from_args(args)

        assert config.depth == 2
        assert config.seed == 9

    def test_s_time_caps(self, clean_env):
        args = build_parser().parse_args(["expand", "znext", "--s-time-caps", "2,1"])

        assert config_from_args(args).s_time_caps == [2, 1]

    def test_unknown_model_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["expand", "zz"])


@pytest.mark.unit
class TestMain:
    """Test exit codes and written files."""

    def test_unknown_suite(self, clean_env):
        assert main(["verify", "theorem9"]) == EXIT_USAGE

    def test_invalid_configuration(self, clean_env):
        assert main(["verify", "lemma1", "--depth", "-1"]) == EXIT_USAGE

    def test_expand_writes_table(self, clean_env, tmp_path):
        out = tmp_path / "zn.json"

        code = main(["expand", "zn", "--depth", "3", "--N", "0", "--out", str(out)])

        assert code == EXIT_PASS
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert {"exponents": {"eps": 3}, "value": "5/24"} in payload["coefficients"]

    def test_expand_csv_to_stdout(self, clean_env, capsys):
        code = main(["expand", "zn", "--depth", "3", "--format", "csv"])

        assert code == EXIT_PASS
        assert capsys.readouterr().out == "eps,value\n0,1\n3,41/24\n"


@pytest.mark.unit
class TestKPVerify:
    """Test the programmatic facade."""

    def test_from_config(self):
        kp = KPVerify.from_config(matrix_dim=1, eigenvalues=["2"], depth=3, penner_power=0)

        result = kp.evaluate("zn")

        assert result.series.coeff(eps=3) == QQ(5, 24) / 8

    def test_from_config_rejects_unknown_field(self):
        with pytest.raises(ConfigurationError):
            KPVerify.from_config(bogus=1)

    def test_unknown_model(self, minimal_config):
        with pytest.raises(ValidationError):
            KPVerify(minimal_config).evaluate("zq")

    def test_eigenvalue_override(self, minimal_config):
        result = KPVerify(minimal_config).evaluate("ime", lam=["2"])

        assert result.lam == (QQ(2),)

    def test_from_file(self, tmp_path):
        path = tmp_path / "kp.conf"
        path.write_text("depth=2\nmatrix-dim=1\n", encoding="utf-8")

        assert KPVerify.from_file(path).config.depth == 2
