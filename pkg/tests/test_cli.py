import json

import pytest

from conftest import run_cli

# every documented subcommand appears here with a golden file
GOLDEN_COMMANDS = [
    ("bracket", ["bracket", "D^2", "t^3"]),
    ("bracket_json", ["bracket", "D^2", "t^3", "--json"]),
    ("bracket_central", ["bracket", "t", "t^-1", "--central"]),
    ("bracket_rank2", ["bracket", "D1^2", "t1^2*t2", "--rank", "2"]),
    ("product", ["product", "t*D", "t^2"]),
    ("cocycle", ["cocycle", "t^2*D", "t^-2*D"]),
    ("act_d", ["act", "D^3", "x", "--family", "d", "--eps", "0"]),
    ("act_vir", ["act", "L_2", "1", "--family", "vir", "--alpha", "alpha"]),
    ("act_hv", ["act", "I_-2", "x", "--family", "hv", "--alpha", "alpha",
                "--beta", "beta"]),
    ("act_rank2", ["act", "D1*D2", "x1", "--family", "dnu", "--eps", "1",
                   "--lam", "l1;l2", "--rank", "2"]),
    ("grade", ["grade", "t^3*D^2 + D + C", "--central"]),
    ("span_probe", ["span-probe", "--gen", "t", "--gen", "t^-1", "--gen", "D^2",
                    "--bounds", "m=1,n=2,depth=6"]),
    ("verma", ["verma", "--phi", "x", "--c", "0", "--bounds", "L=2,N=1"]),
    ("verma_json", ["verma", "--phi", "x", "--c", "0", "--bounds", "L=1,N=1",
                    "--json"]),
    ("act_verma", ["act-verma", "D", "t^-1", "--phi", "b*x", "--c", "c",
                   "--bounds", "L=2,N=1"]),
    ("singular", ["singular", "--phi", "0", "--c", "0",
                  "--bounds", "L=2,N=1,level=1,M=3"]),
    ("hseq", ["hseq", "--phi", "x", "--c", "0", "--n", "6"]),
    ("hseq_json", ["hseq", "--phi", "x", "--c", "0", "--n", "3", "--json"]),
    ("tensor_act", ["tensor-act", "D", "--xexp", "0", "--mono", "1",
                    "--phi", "x", "--c", "c", "--bounds", "L=2,N=1"]),
    ("tensor_probe", ["tensor-probe", "--bounds", "d=2,L=1,N=1,m=3,n=2",
                      "--phi", "x", "--c", "c"]),
    ("tensor_probe_control", ["tensor-probe", "--control-hv",
                              "--bounds", "d=2,L=1,N=1,m=3",
                              "--phi", "x", "--c", "c"]),
    ("intertwiner", ["intertwiner", "--lam-a", "2", "--lam-b", "3",
                     "--phi", "x", "--c", "1/2",
                     "--bounds", "d=2,L=1,N=1,m=3,n=1"]),
    ("verify_single", ["verify", "--suite", "bracket-identities"]),
    ("verify_json", ["verify", "--suite", "span-closure", "--json"]),
]


@pytest.mark.parametrize("name,argv", GOLDEN_COMMANDS, ids=[n for n, _ in GOLDEN_COMMANDS])
def test_golden(name, argv, golden):
    code, out, err = run_cli(argv)
    assert code == 0, err
    golden(name, out)


def test_outputs_are_byte_identical_across_hash_seeds():
    for argv in (["bracket", "t^2*D + t^-1", "t^-2*D^3 + D"],
                 ["verma", "--phi", "x", "--c", "0", "--bounds", "L=2,N=2"],
                 ["singular", "--phi", "0", "--c", "0",
                  "--bounds", "L=2,N=1,level=1,M=2"]):
        code1, out1, _ = run_cli(argv, hash_seed="1")
        code2, out2, _ = run_cli(argv, hash_seed="271828")
        assert code1 == code2 == 0
        assert out1 == out2


def test_parse_error_exit_code():
    code, out, err = run_cli(["bracket", "D^^", "t"])
    assert code == 2
    assert "error" in err
    assert "position" in err


def test_usage_error_exit_code():
    code, _, err = run_cli(["act", "L_x", "1", "--family", "vir"])
    assert code == 2


def test_verify_failure_exit_code():
    # an unknown suite is a usage error
    code, _, err = run_cli(["verify", "--suite", "nope"])
    assert code == 2


def test_env_rank_and_json_precedence():
    code, out, _ = run_cli(["bracket", "D1", "t1*t2"],
                           env_extra={"WEYLMOD_RANK": "2"})
    assert code == 0 and out.strip() == "t1*t2"
    code, out, _ = run_cli(["cocycle", "t", "t^-1"],
                           env_extra={"WEYLMOD_JSON": "1"})
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    # flags win over the environment: --rank overrides WEYLMOD_RANK
    code, out, _ = run_cli(["bracket", "D", "t", "--rank", "1"],
                           env_extra={"WEYLMOD_RANK": "2"})
    assert code == 0 and out.strip() == "t"


def test_json_has_schema_everywhere():
    for name, argv in GOLDEN_COMMANDS:
        if "--json" in argv:
            code, out, _ = run_cli(argv)
            doc = json.loads(out)
            assert doc["schema"] == 1
