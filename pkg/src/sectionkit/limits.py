"""Size caps guarding every exhaustive computation.

The toolkit is desk-scale by design: operations that need a full element
enumeration or a subgroup-lattice crawl fail loudly instead of silently
grinding.  Defaults can be overridden through ``SECTIONKIT_*`` environment
variables (read once at import time).
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass
class Limits:
    # Largest group that elements() will enumerate.
    max_elements: int = 100_000
    # Largest coset-action degree a quotient may produce.
    max_quotient_index: int = 100_000
    # Largest group whose full subgroup lattice may be crawled.
    max_subgroup_order: int = 400
    # Largest ambient product order for section-configuration enumeration.
    max_product_order: int = 1296
    # Largest group order accepted by the isomorphism test.
    max_iso_order: int = 2000


_ENV_FIELDS = {
    "max_elements": "SECTIONKIT_MAX_ELEMENTS",
    "max_quotient_index": "SECTIONKIT_MAX_QUOTIENT_INDEX",
    "max_subgroup_order": "SECTIONKIT_MAX_SUBGROUP_ORDER",
    "max_product_order": "SECTIONKIT_MAX_PRODUCT_ORDER",
    "max_iso_order": "SECTIONKIT_MAX_ISO_ORDER",
}


def limits_from_env(environ=os.environ) -> Limits:
    lim = Limits()
    for field, var in _ENV_FIELDS.items():
        raw = environ.get(var)
        if raw is not None:
            setattr(lim, field, int(raw))
    return lim


LIMITS = limits_from_env()
