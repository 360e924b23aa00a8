"""Write a random equivalence word over Z/6 on a three-point torus to demos/word_z6.json.

    PYTHONPATH=src python3 demos/make_word.py
    PYTHONPATH=src python3 -m modtv normal-form demos/word_z6.json
"""

import json
import random
from pathlib import Path

from modtv.decor import random_rep, torus_with_vertices
from modtv.equivalence import Decoration, random_word, word_to_json
from modtv.gcore import cyclic_group

rng = random.Random(3)
G = cyclic_group(6)
tri = torus_with_vertices(3)
w = random_word(Decoration(frozenset(["p"]), random_rep(tri, G, rng)), 8, rng)
doc = {"group": {"builtin": "z6"}, "surface": "torus_with_vertices:3", **word_to_json(w)}
out = Path(__file__).with_name("word_z6.json")
out.write_text(json.dumps(doc, indent=1) + "\n")
print(out)
