from typing import Any, Dict, Iterable, Mapping


def to_flat_dict(d: Mapping[str, Any], inline: Iterable[str] = ()) -> Dict[str, Any]:
    """
    Converts nested dictionaries to a flat version.

    Sub-dictionaries whose key is in ``inline`` are hoisted to the top level (their keys
    are kept as-is), all other nested keys are joined with a '.', e.g.
    {market: {theta: 1}, overrides: {adam: {beta1: 0.9}}} with inline=[market] ->
    {theta: 1, overrides.adam.beta1: 0.9}
    """
    inline = set(inline)
    new_flat: Dict[str, Any] = {}
    for k, v in d.items():
        if isinstance(v, Mapping):
            sub_d = to_flat_dict(v)
            for sk, sv in sub_d.items():
                flat_key = sk if k in inline else ".".join([k, sk])
                if flat_key in new_flat:
                    raise KeyError(f"Flattening produces the key ``{flat_key}`` twice.")
                new_flat[flat_key] = sv
        else:
            new_flat[k] = v
    return new_flat


def to_nested_dict(d: Mapping[str, Any], inline: Mapping[str, Iterable[str]] = None) -> Dict[str, Any]:
    """
    Inverse of :func:`to_flat_dict`. Converts '.' joined keys back into nested dictionaries
    and moves every top-level key listed in ``inline[section]`` into ``section``.
    """
    owner = {key: section for section, keys in (inline or {}).items() for key in keys}
    new_config: Dict[str, Any] = {section: {} for section in (inline or {})}
    for k, v in d.items():
        if "." in k:
            sub_keys = k.split(".")
            sub_d = new_config
            for sk in sub_keys[:-1]:
                sub_d = sub_d.setdefault(sk, {})
            sub_d[sub_keys[-1]] = v
        elif k in owner:
            new_config[owner[k]][k] = v
        else:
            new_config[k] = v
    return new_config
