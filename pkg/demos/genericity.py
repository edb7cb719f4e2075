"""Building a generic twisted action requirement by requirement.

The scheduler alternates homogeneity steps (a finite partial isometry
must be realized by some pi_alpha(g)) and faithfulness steps (a given
nontrivial word must move some point).  Each step only extends alpha, so
earlier requirements keep holding; the transcript is re-verified from
scratch at the end.
"""
import json

from urysohn.genericity import dumps, preset, run_scheduler, verify_transcript

for name in ("free-product-ZZ", "surface", "hnn-F2"):
    s = preset(name)
    alpha, tr = run_scheduler(s, 12, seed=7)
    kinds = [st["requirement"]["type"] for st in tr["steps"]]
    rep = verify_transcript(json.loads(dumps(tr)))
    print(f"{name:18s} {kinds.count('homogeneity')} homogeneity + {kinds.count('faithfulness')} "
          f"faithfulness steps, alpha has {len(tr['alpha'])} pairs, verified={rep['ok']}")
