from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("dsrgtools")
except PackageNotFoundError:
    # package is not installed
    pass
