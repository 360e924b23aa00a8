import json

import pytest

from modtv import builtins
from modtv.tricomplex import shipped_triangulation_docs


def _shipped_docs():
    docs = dict(builtins.shipped_backend_docs())
    docs.update(shipped_triangulation_docs())
    return docs


@pytest.mark.parametrize("name", sorted(_shipped_docs()))
def test_data_files_in_sync(name):
    # regenerate with: python3 -m modtv.builtins
    on_disk = json.loads(builtins.backend_path(name).read_text(encoding="utf-8"))
    assert on_disk == json.loads(json.dumps(_shipped_docs()[name]))


def test_write_data(tmp_path):
    paths = builtins.write_data(tmp_path)
    assert {p.name for p in paths} == {f"{n}.json" for n in _shipped_docs()}
