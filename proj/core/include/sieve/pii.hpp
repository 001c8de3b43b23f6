#pragma once

#include <string_view>
#include <vector>

#include "sieve/document.hpp"

namespace sieve {

// Hand-rolled scanners for personal data. Every match must sit on a
// token-ish boundary: the neighbouring bytes may not be ASCII letters or
// digits (or otherwise extend the match).
//
//  email  local@domain.tld, local from [A-Za-z0-9._%+-], domain labels from
//         [A-Za-z0-9-], alphabetic TLD of two or more letters.
//  phone  Thai numbers: a leading "0" or "+66" (optionally followed by one
//         separator), then 8 digits starting 2-7 (landline) or 9 digits
//         starting 6, 8 or 9 (mobile). A single '-' or ' ' may sit between
//         any two digits.
//  ip     dotted quad with every octet in 0-255.
struct PiiRules {
    bool email = true;
    bool phone = true;
    bool ip = true;

    std::vector<Span> find_emails(std::string_view text) const;
    std::vector<Span> find_phones(std::string_view text) const;
    std::vector<Span> find_ips(std::string_view text) const;
};

// Emits pii.email, pii.phone_th and pii.ip. Overlaps resolve in favour of
// the earlier rule in that order, so no two spans share a byte.
std::vector<SpanAttribute> tag_pii(const Document& doc, const PiiRules& rules = {});

}  // namespace sieve
