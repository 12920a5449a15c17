"""Rewrite data/MANIFEST after a curated file changes.

    python3 tools/make_manifest.py [DATA_DIR]
"""
import sys
from pathlib import Path

from qsverify.data import default_data_dir, write_manifest

if __name__ == "__main__":
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else default_data_dir()
    print(write_manifest(root))
