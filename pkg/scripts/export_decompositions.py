"""Compute Tens(G) as a union of elementary sets for C2 and A2 and save them as JSON."""
import json
import sys
import time

from tens_semigroup.polyhedra import union_to_json
from tens_semigroup.semigroup import compute_tens_decomposition

out = sys.argv[1] if len(sys.argv) > 1 else "."
for name in ("C2", "A2"):
    t0 = time.time()
    sets = compute_tens_decomposition(name)
    path = f"{out}/tens_{name}.json"
    with open(path, "w") as fh:
        json.dump(union_to_json(sets, system=name), fh, indent=2, sort_keys=True)
    print(f"{name}: {len(sets)} elementary sets -> {path} ({time.time() - t0:.1f}s)")
