"""
Cut rank of larger QAOA instances
=================================

Random 40-qubit Hamiltonians with 100 to 200 distinct 3-local terms.  The
found rank can never exceed 40, grows with the number of terms and drops
slightly when the schedule is refined from 10 to 100 temperatures.  Takes
about half a minute.
"""

import collections
import json

import numpy as np

from mincutrank.anneal import Schedule
from mincutrank.experiments import qaoa_sweep

rows = qaoa_sweep(num_qubits=40, term_counts=(100, 150, 200), localities=(3,),
                  schedules=[Schedule.default(), Schedule.fine()], instances=5, seed=0)

ranks = collections.defaultdict(list)
for r in rows:
    ranks[(json.loads(r["params"])["terms"], len(Schedule.parse(r["schedule"])))].append(r["best_rank"])

print("terms  10 steps  100 steps")
for m in (100, 150, 200):
    print(f"{m:>5}  {np.mean(ranks[(m, 10)]):>8.1f}  {np.mean(ranks[(m, 100)]):>9.1f}")
