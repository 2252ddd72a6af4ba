"""Runs the CLI SVG outputs and checks they parse as SVG 1.1 with finite numbers."""

import math
import os
import re
import subprocess
import sys
import tempfile
import xml.etree.ElementTree as ET

SVG_NS = "{http://www.w3.org/2000/svg}"
NUMERIC = {"x", "y", "cx", "cy", "r", "width", "height", "stroke-width", "font-size"}


def check(text, what):
    root = ET.fromstring(text)
    assert root.tag == SVG_NS + "svg", f"{what}: root is {root.tag}"
    assert root.get("version") == "1.1", f"{what}: version {root.get('version')}"
    assert root.get("viewBox"), f"{what}: no viewBox"
    count = 0
    for el in root.iter():
        for key, value in el.attrib.items():
            if key in NUMERIC or key in ("points", "viewBox"):
                for tok in re.split(r"[\s,]+", value.strip()):
                    if not tok:
                        continue
                    assert math.isfinite(float(tok)), f"{what}: {key}={value}"
                    count += 1
    assert count > 0, f"{what}: no coordinates"
    shapes = [e for e in root.iter() if e.tag in (SVG_NS + "polyline", SVG_NS + "polygon", SVG_NS + "circle")]
    assert shapes, f"{what}: no shapes"


def run(cli, *args):
    proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, f"{args}: exit {proc.returncode}\n{proc.stderr}"
    return proc.stdout


def main():
    cli, samples = sys.argv[1], sys.argv[2]
    for name in ("alpha1_star.json", "alpha2_star.json", "alpha3_star.json"):
        path = os.path.join(samples, name)
        check(run(cli, "render", "--in", path), f"render {name}")
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "flip.svg")
            run(cli, "flip", "--in", path, "--svg", out)
            with open(out, encoding="utf-8") as fh:
                check(fh.read(), f"flip {name}")
    for alpha in ("0.5", "1", "3", "zero"):
        check(run(cli, "--format", "svg", "curve", "sample", "--alpha", alpha, "--foci", "0,-1 0,1", "--through", "0.3,0.5"),
              f"curve alpha={alpha}")
    print("svg outputs well-formed")


if __name__ == "__main__":
    main()
