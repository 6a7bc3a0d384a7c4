#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "gapbp/column.hpp"
#include "gapbp/instance_io.hpp"

using namespace gapbp;

TEST_CASE("ordering puts real columns first, then owner, then bundle bits") {
  const Column real0 = make_agent_column(0, {1, 1}, 5.0);
  const Column real0b = make_agent_column(0, {1, 0}, 9.0);
  const Column real1 = make_agent_column(1, {0, 0}, 1.0);
  const Column art0 = make_artificial_column(0, 100.0);
  const Column art3 = make_artificial_column(3, 100.0);

  CHECK(column_order(real1, art0) == std::strong_ordering::less);
  CHECK(column_order(art0, art3) == std::strong_ordering::less);
  CHECK(column_order(real0, real1) == std::strong_ordering::less);
  CHECK(column_order(real0b, real0) == std::strong_ordering::less);  // 10 < 11
  CHECK(column_order(real0, real0) == std::strong_ordering::equal);
}

TEST_CASE("identity ignores cost: one owner prices one bundle one way") {
  const Column cheap = make_agent_column(2, {0, 1, 1}, 3.0);
  const Column dear = make_agent_column(2, {0, 1, 1}, 30.0);
  CHECK(column_equal_key(cheap, dear));
  CHECK_FALSE(column_equal_key(cheap, make_agent_column(1, {0, 1, 1}, 3.0)));
  CHECK_FALSE(column_equal_key(cheap, make_artificial_column(2, 3.0)));
}

TEST_CASE("constraint columns stack task bits over the owner's unit entry") {
  const Column column = make_agent_column(1, {1, 0, 1}, 7.0);
  const Eigen::VectorXd full = constraint_column(column, 2, 3);
  REQUIRE(full.size() == 5);
  CHECK(full(0) == 1.0);
  CHECK(full(1) == 0.0);
  CHECK(full(2) == 1.0);
  CHECK(full(3) == 0.0);
  CHECK(full(4) == 1.0);

  const Eigen::VectorXd unit = constraint_column(make_artificial_column(2, 9.0), 2, 3);
  CHECK(unit.sum() == 1.0);
  CHECK(unit(2) == 1.0);

  CHECK_THROWS_AS(constraint_column(make_agent_column(5, {1, 0, 1}, 0.0), 2, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(constraint_column(make_agent_column(0, {1}, 0.0), 2, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(constraint_column(make_artificial_column(9, 1.0), 2, 3),
                  std::invalid_argument);
}

TEST_CASE("serialization is the owner|cost|bits|flag line") {
  CHECK(serialize_column(make_agent_column(1, {1, 0, 1}, 7.0)) == "1|7|101|0");
  CHECK(serialize_column(make_artificial_column(3, 1000.0)) == "3|-1000||1");
  // full precision so distinct costs never collide
  const std::string text = serialize_column(make_agent_column(0, {1}, 1.0 / 3.0));
  CHECK(text == "0|" + format_number(1.0 / 3.0) + "|1|0");
}

TEST_CASE("artificial penalty exceeds any possible objective swing") {
  GapInstance instance;
  instance.profits.resize(2, 2);
  instance.profits << 10, -1, 1, 10;
  instance.weights = Eigen::MatrixXd::Ones(2, 2);
  instance.capacity = Eigen::VectorXd::Ones(2);
  CHECK(big_m_cost(instance) == 23.0);  // 1 + sum of |profits|
  CHECK(big_m_cost(instance) > instance.profits.cwiseMax(0.0).sum());
}

TEST_CASE("bases canonicalize to an order-independent serialization") {
  const Column a = make_agent_column(0, {1, 0}, 4.0);
  const Column b = make_agent_column(1, {0, 1}, 6.0);
  const Column art = make_artificial_column(1, 50.0);
  const Basis forward({a, b, art});
  const Basis backward({art, b, a});
  CHECK(forward == backward);
  CHECK(forward.canonical() == backward.canonical());
  CHECK(forward.canonical_hash() == backward.canonical_hash());
  CHECK(forward.size() == 3);
  CHECK(forward.contains_key(make_agent_column(0, {1, 0}, 999.0)));
  CHECK_FALSE(forward.contains_key(make_agent_column(0, {0, 1}, 4.0)));

  const Basis different({a, b});
  CHECK_FALSE(forward == different);
}

TEST_CASE("canonical text lists sorted columns one per line") {
  const Basis basis({make_artificial_column(0, 10.0),
                     make_agent_column(1, {1}, 2.0),
                     make_agent_column(0, {0}, 1.0)});
  CHECK(basis.canonical() == "0|1|0|0\n1|2|1|0\n0|-10||1\n");
}
