import sys
from pathlib import Path

# allow running pytest from a fresh checkout without installing the package
SRC = str(Path(__file__).resolve().parent / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)
