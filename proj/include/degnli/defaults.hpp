#pragma once

#include <string>

#include "degnli/lexicon.hpp"

namespace degnli {

// Built-in lexicon rows.  The table is assembled into the standard
// tab-separated format and fed through the normal loader, so file-based and
// built-in lexicons share one code path (and the CLI can dump this table as a
// starting point for custom lexicons).
//
// Semantic-key classes (first ':'-field):
//   pn:<e>           proper name            n:<p>          common noun
//   tv:<v> iv:<v>    verbs                  aux            perfect auxiliary
//   cop-adj cop-np   copulas                not-adj        predicate negation
//   adj:<a>:base|cmp gradable predicative   adjplain:<p>   plain predicative
//   nadj:<a>         gradable attributive   nadjplain:<p>  plain attributive
//   dgr eqt pos      degree markers (empty elements)
//   as-mark as-comp than-adj than-deg than-pp   comparison complements
//   unit:<u>         measure noun           meas:<u>       measure adjunct
//   det:<d>          determiner             detcmp:<d>     numeric-bound determiner
//   degcmp:<d>       degree-bound adjunct   nomcmp/nomcmpd:<a>  nominal comparatives
//   very             intensifier            vp-or          predicate disjunction
//   num:<k> detnum:<k>   synthesized for cardinal tokens
inline const char* const kLexiconRows[][3] = {
    // Proper names
    {"John", "N", "pn:john"},
    {"Bob", "N", "pn:bob"},
    {"Ann", "N", "pn:ann"},
    {"Mary", "N", "pn:mary"},
    {"Harry", "N", "pn:harry"},
    {"Sue", "N", "pn:sue"},
    {"Tom", "N", "pn:tom"},
    {"Alex", "N", "pn:alex"},
    {"Chris", "N", "pn:chris"},
    {"Mickey", "N", "pn:mickey"},
    {"Dumbo", "N", "pn:dumbo"},
    {"ITEL", "N", "pn:itel"},
    {"APCOM", "N", "pn:apcom"},
    // Common nouns
    {"child", "N", "n:child"},
    {"children", "N", "n:child"},
    {"cookie", "N", "n:cookie"},
    {"cookies", "N", "n:cookie"},
    {"order", "N", "n:order"},
    {"orders", "N", "n:order"},
    {"camper", "N", "n:camper"},
    {"campers", "N", "n:camper"},
    {"cold", "N", "n:cold"},
    {"colds", "N", "n:cold"},
    {"sunburn", "N", "n:sunburn"},
    {"sunburns", "N", "n:sunburn"},
    {"animal", "N", "n:animal"},
    {"animals", "N", "n:animal"},
    {"apple", "N", "n:apple"},
    {"apples", "N", "n:apple"},
    {"book", "N", "n:book"},
    {"books", "N", "n:book"},
    {"boy", "N", "n:boy"},
    {"boys", "N", "n:boy"},
    {"girl", "N", "n:girl"},
    {"girls", "N", "n:girl"},
    {"dog", "N", "n:dog"},
    {"dogs", "N", "n:dog"},
    {"man", "N", "n:man"},
    {"men", "N", "n:man"},
    {"woman", "N", "n:woman"},
    {"women", "N", "n:woman"},
    {"building", "N", "n:building"},
    {"buildings", "N", "n:building"},
    {"tree", "N", "n:tree"},
    {"trees", "N", "n:tree"},
    {"student", "N", "n:student"},
    {"students", "N", "n:student"},
    // Transitive verbs
    {"win", "(S[dcl]\\NP)/NP", "tv:win"},
    {"wins", "(S[dcl]\\NP)/NP", "tv:win"},
    {"won", "(S[dcl]\\NP)/NP", "tv:win"},
    {"have", "(S[dcl]\\NP)/NP", "tv:have"},
    {"has", "(S[dcl]\\NP)/NP", "tv:have"},
    {"had", "(S[dcl]\\NP)/NP", "tv:have"},
    {"eat", "(S[dcl]\\NP)/NP", "tv:eat"},
    {"eats", "(S[dcl]\\NP)/NP", "tv:eat"},
    {"ate", "(S[dcl]\\NP)/NP", "tv:eat"},
    {"read", "(S[dcl]\\NP)/NP", "tv:read"},
    {"reads", "(S[dcl]\\NP)/NP", "tv:read"},
    {"catch", "(S[dcl]\\NP)/NP", "tv:catch"},
    {"catches", "(S[dcl]\\NP)/NP", "tv:catch"},
    {"caught", "(S[dcl]\\NP)/NP", "tv:catch"},
    {"buy", "(S[dcl]\\NP)/NP", "tv:buy"},
    {"buys", "(S[dcl]\\NP)/NP", "tv:buy"},
    {"bought", "(S[dcl]\\NP)/NP", "tv:buy"},
    {"see", "(S[dcl]\\NP)/NP", "tv:see"},
    {"sees", "(S[dcl]\\NP)/NP", "tv:see"},
    {"saw", "(S[dcl]\\NP)/NP", "tv:see"},
    // Intransitive verbs
    {"run", "S[dcl]\\NP", "iv:run"},
    {"runs", "S[dcl]\\NP", "iv:run"},
    {"ran", "S[dcl]\\NP", "iv:run"},
    {"walk", "S[dcl]\\NP", "iv:walk"},
    {"walks", "S[dcl]\\NP", "iv:walk"},
    {"walked", "S[dcl]\\NP", "iv:walk"},
    {"sleep", "S[dcl]\\NP", "iv:sleep"},
    {"sleeps", "S[dcl]\\NP", "iv:sleep"},
    {"slept", "S[dcl]\\NP", "iv:sleep"},
    // Copulas (adjectival and nominal) and the perfect auxiliary
    {"is", "(S[dcl]\\NP)/(S[adj]\\NP)", "cop-adj"},
    {"are", "(S[dcl]\\NP)/(S[adj]\\NP)", "cop-adj"},
    {"was", "(S[dcl]\\NP)/(S[adj]\\NP)", "cop-adj"},
    {"were", "(S[dcl]\\NP)/(S[adj]\\NP)", "cop-adj"},
    {"is", "(S[dcl]\\NP)/NP", "cop-np"},
    {"are", "(S[dcl]\\NP)/NP", "cop-np"},
    {"was", "(S[dcl]\\NP)/NP", "cop-np"},
    {"were", "(S[dcl]\\NP)/NP", "cop-np"},
    {"have", "(S[dcl]\\NP)/(S[dcl]\\NP)", "aux"},
    {"has", "(S[dcl]\\NP)/(S[dcl]\\NP)", "aux"},
    {"had", "(S[dcl]\\NP)/(S[dcl]\\NP)", "aux"},
    {"not", "(S[adj]\\NP)/(S[adj]\\NP)", "not-adj"},
    // Gradable adjectives: predicative base and comparative forms, plus the
    // attributive base form.
    {"tall", "S[adj]\\NP", "adj:tall:base"},
    {"taller", "S[adj]\\NP", "adj:tall:cmp"},
    {"tall", "N/N", "nadj:tall"},
    {"short", "S[adj]\\NP", "adj:short:base"},
    {"shorter", "S[adj]\\NP", "adj:short:cmp"},
    {"short", "N/N", "nadj:short"},
    {"large", "S[adj]\\NP", "adj:large:base"},
    {"larger", "S[adj]\\NP", "adj:large:cmp"},
    {"large", "N/N", "nadj:large"},
    {"small", "S[adj]\\NP", "adj:small:base"},
    {"smaller", "S[adj]\\NP", "adj:small:cmp"},
    {"small", "N/N", "nadj:small"},
    {"old", "S[adj]\\NP", "adj:old:base"},
    {"older", "S[adj]\\NP", "adj:old:cmp"},
    {"old", "N/N", "nadj:old"},
    {"young", "S[adj]\\NP", "adj:young:base"},
    {"younger", "S[adj]\\NP", "adj:young:cmp"},
    {"young", "N/N", "nadj:young"},
    {"heavy", "S[adj]\\NP", "adj:heavy:base"},
    {"heavier", "S[adj]\\NP", "adj:heavy:cmp"},
    {"heavy", "N/N", "nadj:heavy"},
    {"light", "S[adj]\\NP", "adj:light:base"},
    {"lighter", "S[adj]\\NP", "adj:light:cmp"},
    {"light", "N/N", "nadj:light"},
    {"fast", "S[adj]\\NP", "adj:fast:base"},
    {"faster", "S[adj]\\NP", "adj:fast:cmp"},
    {"fast", "N/N", "nadj:fast"},
    {"slow", "S[adj]\\NP", "adj:slow:base"},
    {"slower", "S[adj]\\NP", "adj:slow:cmp"},
    {"slow", "N/N", "nadj:slow"},
    {"high", "S[adj]\\NP", "adj:high:base"},
    {"higher", "S[adj]\\NP", "adj:high:cmp"},
    {"high", "N/N", "nadj:high"},
    {"low", "S[adj]\\NP", "adj:low:base"},
    {"lower", "S[adj]\\NP", "adj:low:cmp"},
    {"low", "N/N", "nadj:low"},
    {"long", "S[adj]\\NP", "adj:long:base"},
    {"longer", "S[adj]\\NP", "adj:long:cmp"},
    {"long", "N/N", "nadj:long"},
    // Plain (non-gradable) adjectives
    {"red", "S[adj]\\NP", "adjplain:red"},
    {"red", "N/N", "nadjplain:red"},
    {"blue", "S[adj]\\NP", "adjplain:blue"},
    {"blue", "N/N", "nadjplain:blue"},
    // Degree markers: empty elements introduced by tree rewrites
    {"dgr", "(S[adj]\\NP)/(S[adj]\\NP)", "dgr"},
    {"eqt", "(S[adj]\\NP)/(S[adj]\\NP)", "eqt"},
    {"pos", "(S[adj]\\NP)/(S[adj]\\NP)", "pos"},
    // Comparison complements
    {"as", "(S[adj]\\NP)/(S[adj]\\NP)", "as-mark"},
    {"as", "((S[adj]\\NP)\\(S[adj]\\NP))/NP", "as-comp"},
    {"than", "((S[adj]\\NP)\\(S[adj]\\NP))/NP", "than-adj"},
    {"than", "((S[adj]\\NP)\\(S[adj]\\NP))/N[deg]", "than-deg"},
    {"than", "PP/NP", "than-pp"},
    // Measure words: degree nominal and degree adjunct uses
    {"foot", "N[deg]\\N[num]", "unit:foot"},
    {"feet", "N[deg]\\N[num]", "unit:foot"},
    {"ft", "N[deg]\\N[num]", "unit:foot"},
    {"inch", "N[deg]\\N[num]", "unit:inch"},
    {"inches", "N[deg]\\N[num]", "unit:inch"},
    {"cm", "N[deg]\\N[num]", "unit:cm"},
    {"centimeter", "N[deg]\\N[num]", "unit:cm"},
    {"centimeters", "N[deg]\\N[num]", "unit:cm"},
    {"m", "N[deg]\\N[num]", "unit:m"},
    {"meter", "N[deg]\\N[num]", "unit:m"},
    {"meters", "N[deg]\\N[num]", "unit:m"},
    {"mm", "N[deg]\\N[num]", "unit:mm"},
    {"millimeter", "N[deg]\\N[num]", "unit:mm"},
    {"millimeters", "N[deg]\\N[num]", "unit:mm"},
    {"kg", "N[deg]\\N[num]", "unit:kg"},
    {"kilogram", "N[deg]\\N[num]", "unit:kg"},
    {"kilograms", "N[deg]\\N[num]", "unit:kg"},
    {"g", "N[deg]\\N[num]", "unit:g"},
    {"gram", "N[deg]\\N[num]", "unit:g"},
    {"grams", "N[deg]\\N[num]", "unit:g"},
    {"year", "N[deg]\\N[num]", "unit:year"},
    {"years", "N[deg]\\N[num]", "unit:year"},
    {"foot", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:foot"},
    {"feet", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:foot"},
    {"ft", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:foot"},
    {"inch", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:inch"},
    {"inches", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:inch"},
    {"cm", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:cm"},
    {"centimeter", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:cm"},
    {"centimeters", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:cm"},
    {"m", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:m"},
    {"meter", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:m"},
    {"meters", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:m"},
    {"mm", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:mm"},
    {"millimeter", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:mm"},
    {"millimeters", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:mm"},
    {"kg", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:kg"},
    {"kilogram", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:kg"},
    {"kilograms", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:kg"},
    {"g", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:g"},
    {"gram", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:g"},
    {"grams", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:g"},
    {"year", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:year"},
    {"years", "((S[adj]\\NP)/(S[adj]\\NP))\\N[num]", "meas:year"},
    // Determiners
    {"every", "NP/N", "det:every"},
    {"each", "NP/N", "det:every"},
    {"some", "NP/N", "det:some"},
    {"a", "NP/N", "det:a"},
    {"an", "NP/N", "det:a"},
    {"the", "NP/N", "det:the"},
    {"no", "NP/N", "det:no"},
    {"most", "NP/N", "det:most"},
    {"many", "NP/N", "det:many"},
    {"few", "NP/N", "det:few"},
    {"a few", "NP/N", "det:afew"},
    {"a lot of", "NP/N", "det:alotof"},
    // Numeric-bound determiners (take a cardinal, then a noun)
    {"at least", "(NP/N)/N[num]", "detcmp:atleast"},
    {"at most", "(NP/N)/N[num]", "detcmp:atmost"},
    {"more than", "(NP/N)/N[num]", "detcmp:morethan"},
    {"no more than", "(NP/N)/N[num]", "detcmp:nomorethan"},
    // Degree-bound adjuncts (take a measure, then a gradable predicate)
    {"more than", "((S[adj]\\NP)/(S[adj]\\NP))/N[deg]", "degcmp:morethan"},
    {"at least", "((S[adj]\\NP)/(S[adj]\\NP))/N[deg]", "degcmp:atleast"},
    // Nominal comparatives: "more orders than APCOM", "3 more cookies than Bob"
    {"more", "(((S[dcl]\\NP)\\((S[dcl]\\NP)/NP))/PP)/N", "nomcmp:many"},
    {"more", "((((S[dcl]\\NP)\\((S[dcl]\\NP)/NP))/PP)/N)\\N[num]", "nomcmpd:many"},
    {"fewer", "(((S[dcl]\\NP)\\((S[dcl]\\NP)/NP))/PP)/N", "nomcmp:few"},
    {"fewer", "((((S[dcl]\\NP)\\((S[dcl]\\NP)/NP))/PP)/N)\\N[num]", "nomcmpd:few"},
    // Misc
    {"very", "(S[adj]\\NP)/(S[adj]\\NP)", "very"},
    {"or", "((S[dcl]\\NP)\\(S[dcl]\\NP))/(S[dcl]\\NP)", "vp-or"},
    {"one hundred", "N[num]", "num:100"},
};

inline std::string default_lexicon_tsv() {
  std::string out;
  for (const auto& row : kLexiconRows) {
    out += row[0];
    out += '\t';
    out += row[1];
    out += '\t';
    out += row[2];
    out += '\n';
  }
  return out;
}

inline const Lexicon& default_lexicon() {
  static const Lexicon lex = [] {
    Lexicon l;
    l.load_string(default_lexicon_tsv());
    return l;
  }();
  return lex;
}

}  // namespace degnli
