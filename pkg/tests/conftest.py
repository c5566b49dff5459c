import hypothesis
import numpy as np
import pytest

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("ci", max_examples=50, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)


@pytest.fixture
def square():
    """Ψ(x) = x²."""
    from composition_lab import make_orlicz

    return make_orlicz("power", 2.0)
