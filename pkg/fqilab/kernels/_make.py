from ._sphere import LaplacianKernel, NtkKernel, ArcCosineKernel
from ._finite import DeltaKernel, FeatureKernel, AugmentedKernel


KERNEL_CLASSES = {
    cls.kernel_id: cls
    for cls in (
        LaplacianKernel,
        NtkKernel,
        ArcCosineKernel,
        DeltaKernel,
        FeatureKernel,
        AugmentedKernel,
    )
}

ALIASES = {
    "lap": "laplacian",
    "ntk": "ntk2",
    "arccos": "arccos1",
    "linear": "explicit-feature",
    # numbering used for the three sphere kernels in spectral work
    "1": "laplacian",
    "2": "ntk2",
    "3": "arccos1",
}


def canonical_kernel_id(kernel_id):
    """Resolve aliases (``lap``, ``ntk``, ``arccos``, 1, 2, 3) to kernel ids."""
    key = str(kernel_id).lower()
    key = ALIASES.get(key, key)
    if key not in KERNEL_CLASSES:
        raise ValueError(
            f"Unknown kernel {kernel_id!r}, use one of {sorted(KERNEL_CLASSES)}."
        )
    return key


def make_kernel(kernel_id, **params):
    """Create a kernel from its id and parameters.

    Parameters
    ----------
    kernel_id : str or int
        One of laplacian, ntk2, arccos1, delta, explicit-feature, augmented
        (or an alias).
    params : dict
        Passed to the kernel class, e.g. ``dim`` and ``rule`` for the
        sphere kernels. Unknown ``dim`` is dropped for kernels without one.
    """
    key = canonical_kernel_id(kernel_id)
    params = dict(params)
    if key == "augmented":
        base = params.pop("base")
        if isinstance(base, dict):
            base = kernel_from_dict(base)
        return AugmentedKernel(base, **params)
    if key in ("delta", "explicit-feature"):
        params.pop("dim", None)
    return KERNEL_CLASSES[key](**params)


def kernel_from_dict(d):
    d = dict(d)
    kernel_id = d.pop("id")
    return make_kernel(kernel_id, **d)
