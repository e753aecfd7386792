import json

import pytest

from monolith_verifier.construct import Recipe, base_recipe
from monolith_verifier.errors import BadParameter, GroupSpecError, InvalidGroupTable, NotLatinSquare
from monolith_verifier.group import content_hash, named_group
from monolith_verifier.utils.group_io import (
    REPLAY_PREFIX,
    group_from_permutations,
    group_to_dict,
    load_group_file,
    parse_permutations,
    resolve_elements,
    resolve_group_spec,
)


@pytest.fixture
def quaternion_file(tmp_path, quaternion):
    """The quaternion table written as a JSON group file."""
    path = tmp_path / "q8.json"
    path.write_text(json.dumps(group_to_dict(quaternion)), encoding="utf-8")
    return str(path)


def test_load_group_file(quaternion_file, quaternion):
    G = load_group_file(quaternion_file)
    assert content_hash(G) == content_hash(quaternion)
    assert G.names == quaternion.names


def test_load_group_file_relocates_identity(tmp_path):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps({"order": 2, "table": [[1, 0], [0, 1]]}), encoding="utf-8")
    G = load_group_file(str(path))
    assert G.source_indices == (1, 0)


@pytest.mark.parametrize("payload, error", [
    ({"order": 3, "table": [[0, 1], [1, 0]]}, InvalidGroupTable),
    ({"table": [[0, 1], [1, 1]]}, NotLatinSquare),
    ({"order": 2}, GroupSpecError),
])
def test_load_group_file_errors(tmp_path, payload, error):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(error):
        load_group_file(str(path))


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(GroupSpecError):
        load_group_file(str(tmp_path / "absent.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(GroupSpecError):
        load_group_file(str(broken))


def test_parse_permutations():
    assert parse_permutations("(1 2 3);(1 2)") == [[[1, 2, 3]], [[1, 2]]]
    assert parse_permutations("(1 2)(3 4)") == [[[1, 2], [3, 4]]]
    assert parse_permutations("()") == [[]]
    for text in ("(1 1)", "(0 1)", "(1 a)", "1 2", ""):
        with pytest.raises(BadParameter):
            parse_permutations(text)


def test_group_from_permutations():
    assert group_from_permutations("(1 2 3);(1 2)").order == 6
    assert group_from_permutations("(1 2 3 4);(1 3)").order == 8
    assert group_from_permutations("(1 2)(3 4);(1 3)(2 4)").order == 4


def test_resolve_group_spec_dispatch(quaternion_file, quaternion):
    assert resolve_group_spec("quaternion").order == 8
    assert resolve_group_spec(" (1 2 3);(1 2) ").order == 6
    assert content_hash(resolve_group_spec(quaternion_file)) == content_hash(quaternion)


def test_resolve_replay_spec(tmp_path, quaternion):
    recipe = Recipe("power", {"n": 2}, base_recipe(quaternion, "quaternion"))
    path = tmp_path / "recipe.json"
    path.write_text(json.dumps({"recipe": recipe.to_dict()}), encoding="utf-8")
    assert resolve_group_spec(REPLAY_PREFIX + str(path)).order == 64
    with pytest.raises(GroupSpecError):
        resolve_group_spec(REPLAY_PREFIX + str(tmp_path / "absent.json"))


def test_resolve_elements(quaternion):
    assert resolve_elements(quaternion, ["i", "-1", "7"]) == [2, 1, 7]
    assert resolve_elements(quaternion, None) == []
    assert named_group("cyclic:3").names == ("e", "a", "a^2")
