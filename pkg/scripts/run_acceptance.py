"""Run the acceptance criteria outside pytest and print one line per criterion."""
import runpy
import sys
from pathlib import Path

if __name__ == "__main__":
    target = Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"
    sys.argv = [str(target)]
    runpy.run_path(str(target), run_name="__main__")
