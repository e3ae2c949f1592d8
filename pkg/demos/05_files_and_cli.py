"""
Files and the command line
==========================

Matrices and split systems travel as small text files.  Values may be
rationals like 7/2; everything is parsed exactly, no floats involved.
The same files drive the ordist command line tool, so this script ends
by invoking it on what it wrote.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from ordist import (
    format_distance_matrix,
    format_split_system,
    generate_distance,
    parse_distance_matrix,
    parse_split_system,
)

MATRIX_TEXT = """\
4
a 0 3 7/2 4
b 3 0 2 5
c 7/2 2 0 3
d 4 5 3 0
"""

SPLITS_TEXT = """\
# one split per line, side | side, optional : weight
4
a b c d
a | b,c,d : 2
a,b | c,d
a,d | b,c : 3/2
"""

d = parse_distance_matrix(MATRIX_TEXT)
print(f"parsed {d.n}x{d.n} matrix, d(a,c) = {d.by_label('a', 'c')}")

system = parse_split_system(SPLITS_TEXT)
print(f"parsed {len(system.splits)} splits; unlisted weights default to 1")

# generate, serialize, reparse: the round trip is lossless
generated = generate_distance(system)
assert parse_distance_matrix(format_distance_matrix(generated)) == generated
assert parse_split_system(format_split_system(system)) == system
print("format/parse round trips preserve every value")

# the CLI consumes the same formats
with tempfile.TemporaryDirectory() as tmp:
    matrix_path = Path(tmp) / "example.dist"
    matrix_path.write_text(MATRIX_TEXT)
    splits_path = Path(tmp) / "example.splits"
    splits_path.write_text(SPLITS_TEXT)
    for args in (
        ["order", "-i", str(matrix_path), "-p", "2", "-q", "1"],
        ["midpath", "-i", str(matrix_path)],
        ["check", "circular", "-s", str(splits_path)],
    ):
        out = subprocess.run(
            [sys.executable, "-m", "ordist.cli", *args],
            capture_output=True,
            text=True,
        )
        print(f"\n$ ordist {' '.join(args)}   (exit {out.returncode})")
        # failed checks report on stderr and exit 1
        print((out.stdout or out.stderr).rstrip())
