import subprocess
import sys
from pathlib import Path

from rindlerkit.cli import main
from rindlerkit.pipeline import CSV_HEADER


def run_cli(*argv):
    return main(list(argv))


def test_point_stdout(capsys):
    rc = run_cli("point", "--a-over-c2-times-L", "0.0", "--n-char", "6", "--s", "1")
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == CSV_HEADER
    assert ",gaussian," in out


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense=1\n")
    rc = run_cli("point", "--config", str(cfg))
    assert rc == 2


def test_missing_config_file():
    rc = run_cli("point", "--config", "/no/such/file.cfg")
    assert rc == 2


def test_decompose_requires_acceleration(tmp_path):
    rc = run_cli("decompose", "--a-over-c2-times-L", "0", "--n-char", "6",
                 "--output", str(tmp_path / "dec"))
    assert rc == 3


def test_sweep_and_flag_override(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "n_char=6\ns=1\ndetector_model=gaussian\n"
        "sweep_aL_min=0.01\nsweep_aL_max=0.1\nsweep_aL_points=2\nsweep_aL_spacing=log\n"
        f"output={tmp_path / 'from_config.csv'}\n"
    )
    rc = run_cli("sweep", "--config", str(cfg), "--output", str(tmp_path / "flag_wins.csv"))
    assert rc == 0
    assert (tmp_path / "flag_wins.csv").exists()
    assert not (tmp_path / "from_config.csv").exists()
    lines = (tmp_path / "flag_wins.csv").read_text().splitlines()
    assert lines[0] == CSV_HEADER and len(lines) == 3


def test_sweep_requires_output():
    rc = run_cli("sweep", "--n-char", "6")
    assert rc == 2


def test_modes_tables(tmp_path):
    rc = run_cli("modes", "--n-char", "6", "--modes-aL", "0.5",
                 "--output", str(tmp_path / "m"))
    assert rc == 0
    state = tmp_path / "m.aL0.5.state.txt"
    optimal = tmp_path / "m.aL0.5.optimal.txt"
    assert state.exists() and optimal.exists()
    header = state.read_text().splitlines()[0]
    assert header == "# coord re_value im_value re_dtime im_dtime"


def test_decompose_tables(tmp_path):
    rc = run_cli("decompose", "--a-over-c2-times-L", "0.5", "--n-char", "6",
                 "--output", str(tmp_path / "dec"))
    assert rc == 0
    for fam in ("mink_pos", "rindI_pos", "rindI_neg", "rindII_pos", "rindII_neg"):
        assert (tmp_path / f"dec.{fam}.txt").exists()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rindlerkit.cli", "point",
         "--a-over-c2-times-L", "0", "--n-char", "6"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith(CSV_HEADER.split(",")[0])
