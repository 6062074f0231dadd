from pathlib import Path

# ROOT: project root directory
ROOT = Path(__file__).resolve().parents[2]

CONFIG_DIR = ROOT / "config"
FIXTURE_DIR = ROOT / "fixtures"
OUTPUT_DIR = ROOT / "outputs"


def ensure_dirs(out_dir: Path = OUTPUT_DIR, *subdirs: str) -> Path:
    """Creates the output directory (and optional subdirectories) before a command writes."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for sub in subdirs:
        (out_dir / sub).mkdir(parents=True, exist_ok=True)
    return out_dir
