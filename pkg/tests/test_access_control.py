# Unit test for relationship-grained access control
import pytest

from access_control.engine import AccessControl, evaluate_access, visible_members
from access_control.permissions import DEFAULT_GUEST, OWNER_PERMISSIONS, Permission, Policy, permission_set
from secretaries.config import Settings
from secretaries.errors import InvalidPermissionSet, NotConnected, UnknownGroup, UnknownUser
from secretaries.graph import SecretaryGraph
from secretaries.models import GroupKey

P = Permission

FRIEND_ONE = GroupKey("friend", 1)
FRIEND_TWO = GroupKey("friend", 2)

FRIEND_PERMISSIONS = {P.ViewMemberList, P.ViewPhotos, P.ViewContactInfo, P.ViewFullProfile}
ACQUAINTANCE_PERMISSIONS = {P.ViewBasicProfile, P.ReadArticles}


def _alice_network():
    graph = SecretaryGraph(seed=4)
    graph.setup_advanced(
        "alice",
        [("friend", 1, 2), ("friend", 2, 2), ("enemy", 1, 1), ("acquaintance", 1, 2), ("family", 1, 2)],
        20,
        seed=1,
    )
    graph.setup_naive("bob", 2, 2, 2, ["business", "rival"], seed=2)
    for index, name in enumerate(["carol", "dave", "eve", "frank", "gina"]):
        graph.setup_naive(name, 1, 1, 1, ["business"], seed=10 + index)
    graph.connect("bob", "business", "alice", FRIEND_ONE)
    graph.connect("carol", "business", "alice", FRIEND_TWO)
    graph.connect("dave", "business", "alice", FRIEND_ONE)
    graph.connect("eve", "business", "alice", "enemy")
    graph.connect("gina", "business", "alice", "acquaintance")

    access = AccessControl(graph)
    access.set_policy("alice", FRIEND_ONE, FRIEND_PERMISSIONS)
    access.set_policy("alice", FRIEND_TWO, FRIEND_PERMISSIONS)
    access.set_policy("alice", "enemy", ["BogusPage"])
    access.set_policy("alice", "acquaintance", ACQUAINTANCE_PERMISSIONS)
    access.set_policy("alice", "family", {P.ViewPhotos, P.PostComment, P.ViewTravelSchedule})
    return graph, access


def test_friend_groups_do_not_see_each_other():
    _, access = _alice_network()
    assert access.members("alice", "bob") == {"bob", "dave"}
    assert access.members("alice", "dave") == {"bob", "dave"}
    assert access.members("alice", "carol") == {"carol"}
    assert "carol" not in access.members("alice", "bob")
    assert "bob" not in access.members("alice", "carol")


def test_enemy_gets_only_the_bogus_page():
    _, access = _alice_network()
    assert access.evaluate("alice", "eve") == frozenset({P.BogusPage})
    assert access.members("alice", "eve") == set()


def test_unconnected_viewer_gets_guest_set():
    _, access = _alice_network()
    assert access.evaluate("alice", "frank") == DEFAULT_GUEST == frozenset({P.ViewBasicProfile})
    assert access.evaluate("alice", "somebody-new") == DEFAULT_GUEST
    assert access.members("alice", "frank") == set()


def test_owner_sees_everything_but_the_bogus_page():
    _, access = _alice_network()
    assert access.evaluate("alice", "alice") == OWNER_PERMISSIONS
    assert P.BogusPage not in OWNER_PERMISSIONS
    assert access.members("alice", "alice") == {"bob", "carol", "dave", "eve", "gina"}


def test_promotion_changes_permissions():
    graph, access = _alice_network()
    assert access.evaluate("alice", "gina") == frozenset(ACQUAINTANCE_PERMISSIONS)
    assert P.ViewContactInfo not in access.evaluate("alice", "gina")
    assert access.members("alice", "gina") == set()

    edge = access.promote("alice", "gina", FRIEND_ONE)
    assert graph.group_of_edge(edge, "alice") == FRIEND_ONE
    assert graph.group_of_edge(edge, "gina") == GroupKey("business")
    assert access.evaluate("alice", "gina") == access.policy("alice").permissions_for(FRIEND_ONE)
    assert access.members("alice", "gina") == {"bob", "dave", "gina"}
    graph.check_invariants()


def test_promote_errors():
    graph, access = _alice_network()
    with pytest.raises(NotConnected):
        access.promote("alice", "frank", FRIEND_ONE)
    with pytest.raises(UnknownGroup):
        access.promote("alice", "gina", "colleague")
    with pytest.raises(UnknownUser):
        access.promote("nobody", "gina", FRIEND_ONE)


def test_access_depends_only_on_owner_side():
    graph, access = _alice_network()
    before = access.evaluate("alice", "bob")
    access.promote("bob", "alice", "rival")
    assert graph.group_of_edge(graph.edge_between("alice", "bob"), "bob") == GroupKey("rival")
    assert access.evaluate("alice", "bob") == before


def test_missing_entry_denies_everything():
    graph, _ = _alice_network()
    assert evaluate_access(graph, Policy("alice"), "alice", "bob") == frozenset()
    assert visible_members(graph, Policy("alice"), "alice", "bob") == set()
    with pytest.raises(UnknownUser):
        evaluate_access(graph, Policy("nobody"), "nobody", "bob")


def test_policy_validation():
    _, access = _alice_network()
    with pytest.raises(InvalidPermissionSet):
        access.set_policy("alice", "enemy", ["BogusPage", "ViewPhotos"])
    with pytest.raises(InvalidPermissionSet):
        permission_set(["ViewEverything"])
    with pytest.raises(UnknownGroup):
        access.set_policy("alice", "colleague", ["ViewPhotos"])
    assert access.evaluate("alice", "eve") == frozenset({P.BogusPage})


def test_guest_set_keeps_sensitive_permissions_out():
    graph, access = _alice_network()
    with pytest.raises(InvalidPermissionSet):
        access.set_guest("alice", [P.ViewBasicProfile, P.ViewContactInfo])
    access.set_guest("alice", [P.ViewBasicProfile, P.ReadArticles])
    assert access.evaluate("alice", "frank") == frozenset({P.ViewBasicProfile, P.ReadArticles})

    relaxed = AccessControl(graph, Settings(allow_sensitive_guest=True))
    relaxed.set_guest("alice", [P.ViewMemberList])
    assert relaxed.evaluate("alice", "frank") == frozenset({P.ViewMemberList})
    assert relaxed.members("alice", "frank") == set()


def test_install_checks_groups():
    _, access = _alice_network()
    access.install(Policy("alice", {GroupKey("family"): frozenset({P.ViewPhotos})}))
    assert access.evaluate("alice", "bob") == frozenset()
    with pytest.raises(UnknownGroup):
        access.install(Policy("alice", {GroupKey("colleague"): frozenset({P.ViewPhotos})}))
