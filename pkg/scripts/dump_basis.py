"""Write a sampled basis (tag, x, value) and the filter-bank catalog.

    python scripts/dump_basis.py sr3 y 3 basis.csv
"""

import sys

from helios.catalog import dump_catalog
from helios.interval_basis import dump_basis

if __name__ == "__main__":
    family, variant, level, path = sys.argv[1], sys.argv[2], int(sys.argv[3]), sys.argv[4]
    dump_basis(family, variant, level, path)
    with open(path + ".catalog.txt", "w") as fh:
        fh.write(dump_catalog())
