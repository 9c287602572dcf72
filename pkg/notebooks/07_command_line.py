"""
Command-line harness
====================

Energies, labelings, traces and summaries are plain text files, so runs can
be scripted and diffed. ``main`` accepts the same argument list as the
``lsaqpbo`` console script.
"""

# %%
import pathlib
import tempfile

from lsaqpbo.cli import main

out = pathlib.Path(tempfile.mkdtemp())
main(["make-deconv", "--width", "16", "--height", "16", "--seed", "1",
      "--out-prefix", str(out / "d")])

# %%
main(["solve", str(out / "d.energy"), "--method", "lsa-tr", "--shape", "16x16",
      "--labeling", str(out / "s.pgm"), "--trace", str(out / "t.csv")])
print((out / "t.csv").read_text())

# %%
main(["eval", str(out / "d.energy"), str(out / "s.pgm")])
