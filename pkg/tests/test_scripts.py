import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"


def test_decomposition_experiment_runs():
    r = subprocess.run(
        [sys.executable, str(SCRIPTS / "a60_decomposition_experiment.py"),
         "--k-max", "400", "--octaves", "2", "--samples", "200"],
        capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stderr
    assert "Clark representation check" in r.stdout
    assert "weak-type control" in r.stdout


def test_majorization_profiles_runs(tmp_path):
    r = subprocess.run(
        [sys.executable, str(SCRIPTS / "majorization_profiles.py"),
         "--outdir", str(tmp_path), "--heights", "1.0", "--rmax", "1000"],
        capture_output=True, text=True, timeout=300)
    assert r.returncode == 0, r.stderr
    csvs = list(tmp_path.glob("*.csv"))
    assert len(csvs) == 6
    header = csvs[0].read_text().splitlines()[0]
    assert header == "z_re,z_im,ratio"
