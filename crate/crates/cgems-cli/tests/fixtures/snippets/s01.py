width = 4
height = 7
area = width * height
perimeter = 2 * (width + height)
print(area, perimeter)
