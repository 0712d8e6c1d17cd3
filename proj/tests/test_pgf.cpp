#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "homoglab/errors.hpp"
#include "homoglab/pgf.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

namespace fs = std::filesystem;

class Pgf : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("homoglab_pgf_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const char* name) const { return (dir_ / name).string(); }

    std::vector<char> bytes(const std::string& p) const
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }
    void put(const std::string& p, const std::vector<char>& b) const
    {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out.write(b.data(), static_cast<std::streamsize>(b.size()));
    }

    fs::path dir_;
};

TEST_F(Pgf, FieldRoundTripIsBitExact)
{
    test::Gen gen(91);
    const std::vector<Grid> grids{Grid::periodic({6, 4}), Grid::box({-1.0, 0.5, 0.0}, {2.0, 1.5, 0.25}, {3, 2, 5}),
                                  Grid::unit_box(1, 7)};
    for (const Grid& g : grids) {
        const GridField f = gen.noise(g, gen.integer(1, 3));
        write_field(path("f.pgf"), f);
        const GridField r = read_field(path("f.pgf"));
        EXPECT_EQ(r.grid.is_periodic(), g.is_periodic());
        EXPECT_EQ(r.grid.sizes(), g.sizes());
        EXPECT_EQ(r.grid.lower(), g.lower());
        EXPECT_EQ(r.grid.upper(), g.upper());
        EXPECT_EQ(r.components, f.components);
        EXPECT_EQ(r.data, f.data);
    }
}

TEST_F(Pgf, TwoScaleRoundTrip)
{
    test::Gen gen(92);
    const TwoScaleField f = gen.noise(Grid::unit_box(2, 3), Grid::periodic({4, 2}), 2);
    write_two_scale(path("t.pgf"), f);
    const TwoScaleField r = read_two_scale(path("t.pgf"));
    EXPECT_TRUE(r.xgrid.same_shape(f.xgrid));
    EXPECT_TRUE(r.ygrid.same_shape(f.ygrid));
    EXPECT_EQ(r.data, f.data);
}

TEST_F(Pgf, KindMismatchIsAFormatError)
{
    write_field(path("f.pgf"), GridField(Grid::unit_box(2, 2), 1));
    EXPECT_THROW(read_two_scale(path("f.pgf")), FormatError);
    write_two_scale(path("t.pgf"), TwoScaleField(Grid::unit_box(2, 2), Grid::periodic({2, 2}), 1));
    EXPECT_THROW(read_field(path("t.pgf")), FormatError);
}

TEST_F(Pgf, CorruptHeaders)
{
    write_field(path("f.pgf"), GridField(Grid::unit_box(2, 4), 2));
    const auto good = bytes(path("f.pgf"));

    auto bad_magic = good;
    bad_magic[0] = 'X';
    put(path("m.pgf"), bad_magic);
    EXPECT_THROW(read_field(path("m.pgf")), FormatError);

    auto bad_version = good;
    bad_version[3] = 9;
    put(path("v.pgf"), bad_version);
    EXPECT_THROW(read_field(path("v.pgf")), FormatError);
}

TEST_F(Pgf, TruncationAtEveryLength)
{
    write_field(path("f.pgf"), GridField(Grid::box({0.0, 0.0}, {1.0, 2.0}, {3, 2}), 2));
    const auto good = bytes(path("f.pgf"));
    for (std::size_t n = 0; n < good.size(); ++n) {
        put(path("cut.pgf"), std::vector<char>(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(n)));
        EXPECT_THROW(read_field(path("cut.pgf")), FormatError) << "length " << n;
    }
    auto extra = good;
    extra.push_back(0);
    put(path("extra.pgf"), extra);
    EXPECT_THROW(read_field(path("extra.pgf")), FormatError);
}

TEST_F(Pgf, MissingFileIsAnIoError)
{
    EXPECT_THROW(read_field(path("absent.pgf")), IoError);
    EXPECT_THROW(write_field((dir_ / "no" / "such" / "dir.pgf").string(), GridField(Grid::unit_box(1, 2), 1)), IoError);
}

}  // namespace
}  // namespace homoglab
