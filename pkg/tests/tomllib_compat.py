import sys
from importlib import resources

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


def load_default() -> dict:
    return tomllib.loads(resources.files("kgap.scenarios").joinpath("paper_default.toml").read_text())
