import tomllib
from pathlib import Path
from typing import Any


LIBPATH: Path = Path(__file__).resolve().parent


def resolve_path(path: Path|str) -> Path:
    """
    Resolve the provided path to an absolute Path.

    Parameters:
    - path (Path | str): The path to be resolved. Relative paths are taken
      relative to the package directory (LIBPATH).

    Returns:
    - Path: An absolute Path after resolution.

    Raises:
    - FileNotFoundError: If the resolved path does not exist.

    Examples:
    >>> resolve_path("templates")
    PosixPath('/absolute/path/to/rqbounds/templates')
    """
    path = Path(path).expanduser()
    if not path.is_absolute():
        path = (LIBPATH / path).resolve()
    if not path.exists():
        raise FileNotFoundError(f"Config: '{path}' does not exist")
    return path


def get_paths_from_config(
    key: str|list[str],
    table: str = 'paths',
) -> Path|list[Path]|dict[str, Any]:
    """
    Retrieve paths from CONFIG based on the specified key (supports dot notation and list of keys for nested access).

    Parameters:
    - key (str|list[str]): The key to identify the paths in CONFIG.
        - str: Simple key or dot notation (e.g. 'templates')
        - list[str]: List of keys for nested access
    - table (str): The table in CONFIG to search. Default is 'paths'.

    Returns:
    - Path: Single resolved Path when the entry is a string.
    - list[Path] | dict[str, Path]: Resolved paths, same shape as the entry.

    Raises:
    - TypeError: If an unexpected type is encountered while reading paths.
    """
    keys = key.split('.') if isinstance(key, str) else key

    config = CONFIG[table]
    for k in keys:
        config = config[k]

    return _resolve_config_paths(config)


def _resolve_config_paths(config: str|list|dict) -> Path|list|dict:
    """Recursively resolve paths in config structure, preserving its shape."""
    match config:
        case list():
            return [_resolve_config_paths(item) for item in config]
        case dict():
            return {k: _resolve_config_paths(v) for k, v in config.items()}
        case str():
            return resolve_path(config)
        case _:
            raise TypeError(f'Encountered unexpected type: {type(config)} while reading paths')


def load_config() -> dict[str, Any]:
    """
    Load configuration data from the 'config.toml' file in the 'config' directory.

    If 'config.toml' is not found, it falls back to 'config.default.toml'.

    Returns:
    dict[str, Any]: A dictionary containing the loaded configuration.

    Example:
    >>> load_config()['tolerances']['hermitian']
    1e-12
    """
    config_dir = LIBPATH / 'config'
    config_file = config_dir / 'config.toml'

    if not config_file.exists():
        config_file = config_dir / 'config.default.toml'

    with open(config_file, 'rb') as f:
        config = tomllib.load(f)

    return config


CONFIG = load_config()
TOLERANCES: dict[str, float] = CONFIG['tolerances']
