"""imcdse - joint multi-workload design-space exploration for IMC accelerators."""

from importlib.metadata import version

__version__ = version("imcdse")
