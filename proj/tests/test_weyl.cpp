#include <gtest/gtest.h>

#include <set>

#include "shapealg/weyl.hpp"

using namespace shapealg;

TEST(weyl, group_structure) {
  EXPECT_EQ(s1(), (Perm{2, 1, 3}));
  EXPECT_EQ(s2(), (Perm{1, 3, 2}));
  EXPECT_EQ(compose(s1(), s1()), identity_perm());
  EXPECT_EQ(compose(s2(), s2()), identity_perm());
  EXPECT_EQ(compose(s1(), s2()), (Perm{2, 3, 1}));
  EXPECT_EQ(compose(s2(), s1()), (Perm{3, 1, 2}));
  EXPECT_EQ(compose(s1(), compose(s2(), s1())), (Perm{3, 2, 1}));
  EXPECT_EQ(compose(s1(), compose(s2(), s1())), compose(s2(), compose(s1(), s2())));

  const auto& all = weyl_elements();
  ASSERT_EQ(all.size(), 6u);
  std::set<std::string> names;
  for (const Perm& w : all) names.insert(perm_str(w));
  EXPECT_EQ(names.size(), 6u);

  EXPECT_EQ(perm_length(identity_perm()), 0);
  EXPECT_EQ(perm_length(s1()), 1);
  EXPECT_EQ(perm_length((Perm{2, 3, 1})), 2);
  EXPECT_EQ(perm_length((Perm{3, 2, 1})), 3);
}

TEST(weyl, reflection_action) {
  const Weight l{3, 5};
  EXPECT_EQ(act(identity_perm(), l), l);
  EXPECT_EQ(act(s1(), l), (Weight{-3, 8}));
  EXPECT_EQ(act(s2(), l), (Weight{8, -5}));
  EXPECT_EQ(act((Perm{3, 2, 1}), (Weight{1, 1})), (Weight{-1, -1}));

  // the action is a group action: (v o w).l == v.(w.l) on all pairs
  for (const Perm& v : weyl_elements())
    for (const Perm& w : weyl_elements())
      EXPECT_EQ(act(compose(v, w), l), act(v, act(w, l)));

  EXPECT_EQ(orbit({1, 1}).size(), 6u);
  std::vector<Weight> o1 = orbit({1, 0});
  ASSERT_EQ(o1.size(), 3u);
  EXPECT_EQ(o1[0], (Weight{1, 0}));
  EXPECT_EQ(o1[1], (Weight{-1, 1}));
  EXPECT_EQ(o1[2], (Weight{0, -1}));
  EXPECT_EQ(orbit({0, 1}).size(), 3u);
  EXPECT_EQ(orbit({0, 0}).size(), 1u);
}

TEST(weyl, dimension_polynomial) {
  EXPECT_EQ(weyl_dim(0, 0), 1);
  EXPECT_EQ(weyl_dim(1, 0), 3);
  EXPECT_EQ(weyl_dim(0, 1), 3);
  EXPECT_EQ(weyl_dim(1, 1), 8);
  EXPECT_EQ(weyl_dim(2, 0), 6);
  EXPECT_EQ(weyl_dim(2, 1), 15);
  EXPECT_EQ(weyl_dim(1, 2), 15);
  EXPECT_EQ(weyl_dim(2, 2), 27);
  EXPECT_EQ(weyl_dim(3, 3), 64);
  EXPECT_EQ(weyl_dim(6, 0), 28);
  EXPECT_THROW(weyl_dim(-1, 0), NegativeWeight);
  EXPECT_THROW(weyl_dim(0, -2), NegativeWeight);
}

TEST(weyl, orthocell_catalog) {
  const auto& cells = orthocells();
  ASSERT_EQ(cells.size(), 14u);

  int singles = 0, pairs = 0;
  std::set<std::string> names;
  for (const Orthocell& c : cells) {
    names.insert(c.name);
    if (c.members.size() == 1) {
      ++singles;
      EXPECT_EQ(c.root, 0);
    } else {
      ASSERT_EQ(c.members.size(), 2u);
      ++pairs;
      ASSERT_TRUE(c.root == 1 || c.root == 2);
      ASSERT_TRUE(c.side == 'L' || c.side == 'R');
      // the two members differ by one simple reflection on the stated side
      const Perm s = c.root == 1 ? s1() : s2();
      const Perm& x = c.members[0];
      const Perm& y = c.members[1];
      if (c.side == 'L')
        EXPECT_EQ(compose(s, x), y);
      else
        EXPECT_EQ(compose(x, s), y);
      EXPECT_TRUE(perm_str(x) < perm_str(y));
      // the representative is the longer member
      EXPECT_EQ(perm_length(c.rep()),
                std::max(perm_length(x), perm_length(y)));
    }
  }
  EXPECT_EQ(singles, 6);
  EXPECT_EQ(pairs, 8);
  EXPECT_EQ(names.size(), 14u);

  // left pairs for each root partition the group
  for (int root : {1, 2}) {
    std::set<std::string> covered;
    for (const Orthocell& c : cells)
      if (c.root == root && c.side == 'L')
        for (const Perm& w : c.members) covered.insert(perm_str(w));
    EXPECT_EQ(covered.size(), 6u) << "root " << root;
  }

  EXPECT_EQ(orthocell("C2").members[1], (Perm{2, 3, 1}));
  EXPECT_EQ(perm_str(orthocell("C5").rep()), "312");
  EXPECT_EQ(orthocell("W321").members[0], (Perm{3, 2, 1}));
  EXPECT_THROW(orthocell("C9"), Error);
}
