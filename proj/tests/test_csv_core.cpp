#include <doctest.h>

#include "citycomplex/core.hpp"
#include "citycomplex/csv.hpp"
#include "citycomplex/errors.hpp"
#include "citycomplex/rng.hpp"
#include "helpers.hpp"

using namespace citycomplex;
using testutil::TempDir;
using testutil::write_text;

TEST_CASE("stores: well-formed file parses every row") {
    TempDir dir("stores_ok");
    write_text(dir.file("stores.csv"),
               "store_id,lon,lat,category\n"
               "1,126.98,37.56,retail/grocery\n"
               "2,126.99,37.57,food/cafe\n"
               "3,127.00,37.58,service\n");
    auto stores = ingest_stores(dir.file("stores.csv"), 2019);
    REQUIRE(stores.size() == 3);
    CHECK(stores[0].store_id == 1);
    CHECK(stores[1].category == "food/cafe");
    CHECK(stores[2].year == 2019);
    CHECK(primary_category(stores[0].category) == "retail");
    CHECK(primary_category("service") == "service");
}

TEST_CASE("stores: latitude out of range aborts with the row number") {
    TempDir dir("stores_lat");
    write_text(dir.file("stores.csv"),
               "store_id,lon,lat,category\n"
               "1,126.98,91.0,retail\n"
               "2,126.99,37.57,food\n");
    try {
        ingest_stores(dir.file("stores.csv"), 2019);
        FAIL("expected CoordinateOutOfRange");
    } catch (const IngestError& e) {
        CHECK(e.code() == "CoordinateOutOfRange");
        CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
}

TEST_CASE("stores: duplicate ids and empty categories are rejected") {
    TempDir dir("stores_dup");
    write_text(dir.file("dup.csv"),
               "store_id,lon,lat,category\n"
               "7,126.98,37.56,retail\n"
               "7,126.99,37.57,food\n");
    CHECK_THROWS_WITH_AS(ingest_stores(dir.file("dup.csv"), 2019),
                         doctest::Contains("DuplicateId"), IngestError);

    write_text(dir.file("empty_cat.csv"),
               "store_id,lon,lat,category\n"
               "1,126.98,37.56,\n");
    CHECK_THROWS_WITH_AS(ingest_stores(dir.file("empty_cat.csv"), 2019),
                         doctest::Contains("EmptyCategory"), IngestError);

    write_text(dir.file("no_cat.csv"), "store_id,lon,lat\n1,126.98,37.56\n");
    CHECK_THROWS_WITH_AS(ingest_stores(dir.file("no_cat.csv"), 2019),
                         doctest::Contains("MissingColumn"), IngestError);
}

TEST_CASE("stores: tab-delimited input is auto-detected") {
    TempDir dir("stores_tab");
    write_text(dir.file("stores.tsv"),
               "store_id\tlon\tlat\tcategory\n"
               "1\t126.98\t37.56\tretail/grocery\n");
    auto stores = ingest_stores(dir.file("stores.tsv"), 2016);
    REQUIRE(stores.size() == 1);
    CHECK(stores[0].category == "retail/grocery");
}

TEST_CASE("stores: separate subcategory column is folded into the code") {
    TempDir dir("stores_sub");
    write_text(dir.file("stores.csv"),
               "store_id,lon,lat,category,subcategory\n"
               "1,126.98,37.56,retail,grocery\n"
               "2,126.99,37.57,food,\n");
    auto stores = ingest_stores(dir.file("stores.csv"), 2016);
    CHECK(stores[0].category == "retail/grocery");
    CHECK(stores[1].category == "food");
}

TEST_CASE("weather: heat-wave row survives a write/ingest round trip") {
    TempDir dir("weather_rt");
    std::vector<WeatherRecord> records = {{2018, 8, 33.3, 39.6, 120.0}};
    write_weather(dir.file("weather.csv"), records);
    auto back = ingest_weather(dir.file("weather.csv"));
    REQUIRE(back.size() == 1);
    CHECK(back[0].year == 2018);
    CHECK(back[0].month == 8);
    CHECK(back[0].mean_high_temp_c == doctest::Approx(33.3));
    CHECK(back[0].max_temp_c == doctest::Approx(39.6));
    CHECK(back[0].precip_mm == doctest::Approx(120.0));
}

TEST_CASE("weather: validation rejects bad rows") {
    TempDir dir("weather_bad");
    write_text(dir.file("neg.csv"),
               "year,month,mean_high_temp_c,max_temp_c,precip_mm\n"
               "2018,8,33.3,39.6,-1\n");
    CHECK_THROWS_WITH_AS(ingest_weather(dir.file("neg.csv")),
                         doctest::Contains("NegativePrecip"), IngestError);

    write_text(dir.file("order.csv"),
               "year,month,mean_high_temp_c,max_temp_c,precip_mm\n"
               "2018,8,33.3,30.0,120\n");
    CHECK_THROWS_WITH_AS(ingest_weather(dir.file("order.csv")),
                         doctest::Contains("TemperatureOrder"), IngestError);

    write_text(dir.file("dup.csv"),
               "year,month,mean_high_temp_c,max_temp_c,precip_mm\n"
               "2018,8,33.3,39.6,120\n"
               "2018,8,30.0,35.0,100\n");
    CHECK_THROWS_WITH_AS(ingest_weather(dir.file("dup.csv")),
                         doctest::Contains("DuplicatePeriod"), IngestError);
}

TEST_CASE("mobility: timeslot vocabulary is closed and counts non-negative") {
    TempDir dir("mobility");
    write_text(dir.file("ok.csv"),
               "source_id,lon,lat,year,month,timeslot,demographic,count\n"
               "st1,126.98,37.56,2018,8,09-18,total,1200\n"
               "st1,126.98,37.56,2018,8,07-24,total,5000\n");
    auto counts = ingest_mobility(dir.file("ok.csv"));
    REQUIRE(counts.size() == 2);
    CHECK(counts[0].timeslot == "09-18");

    write_text(dir.file("slot.csv"),
               "source_id,lon,lat,year,month,timeslot,demographic,count\n"
               "st1,126.98,37.56,2018,8,25-26,total,1200\n");
    CHECK_THROWS_WITH_AS(ingest_mobility(dir.file("slot.csv")),
                         doctest::Contains("UnknownTimeslot"), IngestError);

    write_text(dir.file("neg.csv"),
               "source_id,lon,lat,year,month,timeslot,demographic,count\n"
               "st1,126.98,37.56,2018,8,07-24,total,-5\n");
    CHECK_THROWS_WITH_AS(ingest_mobility(dir.file("neg.csv")),
                         doctest::Contains("NegativeCount"), IngestError);
}

TEST_CASE("cluster attributes: semicolon-separated station list") {
    TempDir dir("attrs");
    write_text(dir.file("attrs.csv"),
               "cluster_id,green_area_m2,metro_station_ids\n"
               "1,2500.5,stA;stB\n"
               "2,0,\n");
    auto attrs = ingest_cluster_attributes(dir.file("attrs.csv"));
    REQUIRE(attrs.size() == 2);
    CHECK(attrs[0].metro_station_ids == std::vector<std::string>{"stA", "stB"});
    CHECK(attrs[1].metro_station_ids.empty());
    CHECK(attrs[0].green_area_m2 == doctest::Approx(2500.5));
}

TEST_CASE("stores: random ingest -> serialize -> ingest is the identity") {
    TempDir dir("stores_prop");
    CounterRng rng(42);
    std::vector<StorePoint> stores;
    for (int i = 0; i < 200; ++i) {
        StorePoint s = testutil::store_at(i + 1, rng.uniform(-4000, 4000),
                                          rng.uniform(-4000, 4000));
        s.category = rng.uniform() < 0.5 ? "retail/grocery" : "food";
        stores.push_back(s);
    }
    write_stores(dir.file("a.csv"), stores);
    auto back = ingest_stores(dir.file("a.csv"), 2016);
    REQUIRE(back.size() == stores.size());
    for (std::size_t i = 0; i < stores.size(); ++i) {
        CHECK(back[i].store_id == stores[i].store_id);
        CHECK(back[i].lon == stores[i].lon);  // bit-exact via max-precision text
        CHECK(back[i].lat == stores[i].lat);
        CHECK(back[i].category == stores[i].category);
    }
    // A second serialization is byte-identical.
    write_stores(dir.file("b.csv"), back);
    CHECK(testutil::read_text(dir.file("a.csv")) == testutil::read_text(dir.file("b.csv")));
}

TEST_CASE("csv: ragged rows and missing files are ingest errors") {
    TempDir dir("csv_bad");
    write_text(dir.file("ragged.csv"), "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(csv::read_file(dir.file("ragged.csv")), IngestError);
    CHECK_THROWS_AS(csv::read_file(dir.file("nope.csv")), IngestError);
    CHECK_THROWS_AS(csv::parse_double("abc", 3), IngestError);
    CHECK_THROWS_AS(csv::parse_int("1.5", 3), IngestError);
}
