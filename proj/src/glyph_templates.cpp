#include "hebbocr/glyphgen.hpp"

#include "hebbocr/error.hpp"
#include "hebbocr/labels.hpp"

#include <array>
#include <vector>

namespace hebbocr {

namespace {

// 8x8 bitmaps, one per class, '#' = ink. Uppercase glyphs are drawn about
// 5x7, lowercase about 5 cells of x-height with ascenders and descenders,
// so upper/lower pairs of similar shape still crop to different rasters.
struct TemplateArt {
    char label;
    std::array<const char*, 8> rows;
};

constexpr TemplateArt kTemplateArt[52] = {
    {'A', {".###....",
           "#...#...",
           "#...#...",
           "#####...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'B', {"####....",
           "#...#...",
           "#...#...",
           "####....",
           "#...#...",
           "#...#...",
           "####....",
           "........"}},
    {'C', {".###....",
           "#...#...",
           "#.......",
           "#.......",
           "#.......",
           "#...#...",
           ".###....",
           "........"}},
    {'D', {"####....",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "####....",
           "........"}},
    {'E', {"#####...",
           "#.......",
           "#.......",
           "####....",
           "#.......",
           "#.......",
           "#####...",
           "........"}},
    {'F', {"#####...",
           "#.......",
           "#.......",
           "####....",
           "#.......",
           "#.......",
           "#.......",
           "........"}},
    {'G', {".###....",
           "#...#...",
           "#.......",
           "#..##...",
           "#...#...",
           "#...#...",
           ".###....",
           "........"}},
    {'H', {"#...#...",
           "#...#...",
           "#...#...",
           "#####...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'I', {"#####...",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "#####...",
           "........"}},
    {'J', {"..###...",
           "...#....",
           "...#....",
           "...#....",
           "...#....",
           "#..#....",
           ".##.....",
           "........"}},
    {'K', {"#...#...",
           "#..#....",
           "#.#.....",
           "##......",
           "#.#.....",
           "#..#....",
           "#...#...",
           "........"}},
    {'L', {"#.......",
           "#.......",
           "#.......",
           "#.......",
           "#.......",
           "#.......",
           "#####...",
           "........"}},
    {'M', {"#...#...",
           "##.##...",
           "#.#.#...",
           "#.#.#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'N', {"#...#...",
           "##..#...",
           "#.#.#...",
           "#..##...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'O', {".###....",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           ".###....",
           "........"}},
    {'P', {"####....",
           "#...#...",
           "#...#...",
           "####....",
           "#.......",
           "#.......",
           "#.......",
           "........"}},
    {'Q', {".###....",
           "#...#...",
           "#...#...",
           "#...#...",
           "#.#.#...",
           "#..#....",
           ".##.#...",
           "........"}},
    {'R', {"####....",
           "#...#...",
           "#...#...",
           "####....",
           "#.#.....",
           "#..#....",
           "#...#...",
           "........"}},
    {'S', {".####...",
           "#.......",
           "#.......",
           ".###....",
           "....#...",
           "....#...",
           "####....",
           "........"}},
    {'T', {"#####...",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "........"}},
    {'U', {"#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           ".###....",
           "........"}},
    {'V', {"#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           ".#.#....",
           ".#.#....",
           "..#.....",
           "........"}},
    {'W', {"#...#...",
           "#...#...",
           "#...#...",
           "#.#.#...",
           "#.#.#...",
           "##.##...",
           "#...#...",
           "........"}},
    {'X', {"#...#...",
           "#...#...",
           ".#.#....",
           "..#.....",
           ".#.#....",
           "#...#...",
           "#...#...",
           "........"}},
    {'Y', {"#...#...",
           "#...#...",
           ".#.#....",
           "..#.....",
           "..#.....",
           "..#.....",
           "..#.....",
           "........"}},
    {'Z', {"#####...",
           "....#...",
           "...#....",
           "..#.....",
           ".#......",
           "#.......",
           "#####...",
           "........"}},
    {'a', {"........",
           "........",
           ".###....",
           "....#...",
           ".####...",
           "#...#...",
           ".####...",
           "........"}},
    {'b', {"#.......",
           "#.......",
           "####....",
           "#...#...",
           "#...#...",
           "#...#...",
           "####....",
           "........"}},
    {'c', {"........",
           "........",
           ".###....",
           "#.......",
           "#.......",
           "#.......",
           ".###....",
           "........"}},
    {'d', {"....#...",
           "....#...",
           ".####...",
           "#...#...",
           "#...#...",
           "#...#...",
           ".####...",
           "........"}},
    {'e', {"........",
           "........",
           ".###....",
           "#...#...",
           "#####...",
           "#.......",
           ".###....",
           "........"}},
    {'f', {"..##....",
           ".#......",
           "####....",
           ".#......",
           ".#......",
           ".#......",
           ".#......",
           "........"}},
    {'g', {"........",
           "........",
           ".####...",
           "#...#...",
           "#...#...",
           ".####...",
           "....#...",
           ".###...."}},
    {'h', {"#.......",
           "#.......",
           "####....",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'i', {"........",
           ".#......",
           "........",
           ".#......",
           ".#......",
           ".#......",
           ".#......",
           "........"}},
    {'j', {"........",
           "...#....",
           "........",
           "...#....",
           "...#....",
           "...#....",
           "...#....",
           ".##....."}},
    {'k', {"#.......",
           "#.......",
           "#..#....",
           "#.#.....",
           "##......",
           "#.#.....",
           "#..#....",
           "........"}},
    {'l', {".#......",
           ".#......",
           ".#......",
           ".#......",
           ".#......",
           ".#......",
           ".#......",
           "........"}},
    {'m', {"........",
           "........",
           "##.##...",
           "#.#.#...",
           "#.#.#...",
           "#.#.#...",
           "#.#.#...",
           "........"}},
    {'n', {"........",
           "........",
           "####....",
           "#...#...",
           "#...#...",
           "#...#...",
           "#...#...",
           "........"}},
    {'o', {"........",
           "........",
           ".###....",
           "#...#...",
           "#...#...",
           "#...#...",
           ".###....",
           "........"}},
    {'p', {"........",
           "........",
           "####....",
           "#...#...",
           "#...#...",
           "####....",
           "#.......",
           "#......."}},
    {'q', {"........",
           "........",
           ".####...",
           "#...#...",
           "#...#...",
           ".####...",
           "....#...",
           "....#..."}},
    {'r', {"........",
           "........",
           "#.##....",
           "##..#...",
           "#.......",
           "#.......",
           "#.......",
           "........"}},
    {'s', {"........",
           "........",
           ".####...",
           "#.......",
           ".###....",
           "....#...",
           "####....",
           "........"}},
    {'t', {".#......",
           ".#......",
           "####....",
           ".#......",
           ".#......",
           ".#......",
           "..##....",
           "........"}},
    {'u', {"........",
           "........",
           "#...#...",
           "#...#...",
           "#...#...",
           "#..##...",
           ".##.#...",
           "........"}},
    {'v', {"........",
           "........",
           "#...#...",
           "#...#...",
           ".#.#....",
           ".#.#....",
           "..#.....",
           "........"}},
    {'w', {"........",
           "........",
           "#...#...",
           "#.#.#...",
           "#.#.#...",
           "#.#.#...",
           ".#.#....",
           "........"}},
    {'x', {"........",
           "........",
           "#...#...",
           ".#.#....",
           "..#.....",
           ".#.#....",
           "#...#...",
           "........"}},
    {'y', {"........",
           "........",
           "#...#...",
           "#...#...",
           ".#.#....",
           "..#.....",
           ".#......",
           "#......."}},
    {'z', {"........",
           "........",
           "#####...",
           "...#....",
           "..#.....",
           ".#......",
           "#####...",
           "........"}},
};

std::vector<GlyphTemplate> build_templates() {
    std::vector<GlyphTemplate> templates;
    templates.reserve(52);
    for (const TemplateArt& art : kTemplateArt) {
        GlyphTemplate t;
        t.label = art.label;
        t.bitmap = BinaryGrid::Constant(8, 8, kBackground);
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                if (art.rows[static_cast<std::size_t>(r)][c] == '#') t.bitmap(r, c) = kInk;
            }
        }
        templates.push_back(std::move(t));
    }
    return templates;
}

} // namespace

std::span<const GlyphTemplate> builtin_templates() {
    static const std::vector<GlyphTemplate> templates = build_templates();
    return {templates.data(), templates.size()};
}

const GlyphTemplate& template_for(char label) {
    return builtin_templates()[static_cast<std::size_t>(class_index(label))];
}

} // namespace hebbocr
